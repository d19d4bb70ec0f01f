"""Bundled example documents, the analysis pipeline and report rendering."""

from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .constructions import (MetricLieAlgebra, is_biinvariant, is_flat_biinvariant,
                            structure_decomposition)
from .errors import InvariantError, ValidationError
from .io import EXPECTED_COMPUTED, EXPECTED_METADATA, AlgebraSpecDocument, loads
from .koszul import RelativeComplex
from .prehomog import (analyze, characteristic_map, delta_law_holds, fundform_law_holds,
                       invariant_form_check, relative_invariant)

CATALOG_PACKAGE = "phg.catalog_data"

# a bundled document; its note describes the example
CatalogEntry = AlgebraSpecDocument


def _files():
    return resources.files(CATALOG_PACKAGE)


def names():
    return sorted(p.name[:-5] for p in _files().iterdir() if p.name.endswith(".json"))


def raw(name):
    """Canonical text of a catalog entry."""
    path = _files() / (name + ".json")
    if not path.is_file():
        raise ValidationError("no catalog entry named %r (have: %s)" % (name, ", ".join(names())))
    return path.read_text(encoding="utf-8")


def get(name):
    return loads(raw(name))


def resolve(ref):
    """A document from ``catalog:NAME``, a path, or ``-`` for stdin."""
    from .io import load
    if ref.startswith("catalog:"):
        return get(ref[len("catalog:"):])
    return load(ref)


def _abstract_report(g):
    cx = RelativeComplex(g)
    betti = cx.betti()
    return {
        "dim": g.dim,
        "nilpotent": g.is_nilpotent(),
        "unimodular": g.is_unimodular(),
        "two_step": g.is_two_step(),
        "solvable": g.is_solvable(),
        "betti": betti,
        "top_cohomology": betti[-1],
    }


def _metric_report(M):
    rep = _abstract_report(M.g)
    p, q = M.signature()
    rep["signature"] = [p, q]
    rep["biinvariant"] = is_biinvariant(M)
    rep["flat_biinvariant"] = is_flat_biinvariant(M)
    if rep["flat_biinvariant"]:
        dec = structure_decomposition(M)
        rep["center_dim"] = len(dec.z)
        rep["isotropic_dim"] = len(dec.a)
    return rep


def _realization_report(doc, r, at, seed):
    rep = analyze(r, at=at, seed=seed).to_dict()
    if doc.witness_elements:
        phi = characteristic_map(r)
        delta = relative_invariant(r) if r.m == r.n else None
        for A in doc.witness_elements:
            if not fundform_law_holds(r, A, phi):
                raise InvariantError("characteristic form transformation law fails for a witness")
            if delta is not None and not delta_law_holds(r, A, delta):
                raise InvariantError("relative invariant transformation law fails for a witness")
        rep["witness_laws"] = len(doc.witness_elements)
    if doc.gram is not None:
        rep["invariant_form"] = invariant_form_check(r, doc.gram, "symmetric")
    if doc.forms:
        for key, M in sorted(doc.forms.items()):
            kind = "symmetric" if M.T == M else "skew"
            if kind == "skew" and M.T != -M:
                continue
            rep["invariant_" + key] = invariant_form_check(r, M, kind)
    return rep


# reports are plain JSON-ready dicts
Report = dict


def run_analysis(doc, at=None, seed=0):
    """Structured report for any document kind."""
    if isinstance(doc, str):
        doc = resolve(doc)
    obj = doc.build()
    if doc.kind == "affine_realization":
        rep = _realization_report(doc, obj, at, seed)
    elif doc.kind == "metric":
        rep = _metric_report(obj)
    else:
        rep = _abstract_report(obj)
    for key in EXPECTED_METADATA:
        if key in doc.expected:
            rep[key] = doc.expected[key]
    out = {"schema": 1, "name": doc.name, "kind": doc.kind}
    out.update(rep)
    return out


def check_expected(doc, report):
    """List of ``(key, expected, got)`` where the pipeline disagrees."""
    bad = []
    for key in EXPECTED_COMPUTED:
        if key in doc.expected:
            got = report.get(key)
            if got != doc.expected[key]:
                bad.append((key, doc.expected[key], got))
    return bad


def _check_entry(args):
    name, seed = args
    doc = get(name)
    rep = run_analysis(doc, seed=seed)
    return name, rep, check_expected(doc, rep)


def check_all(seed=0, workers=None):
    """Run every entry concurrently; results come back in catalog order."""
    jobs = [(n, seed) for n in names()]
    if workers == 1:
        return [_check_entry(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_entry, jobs))


def _yn(x):
    if x is None:
        return "n/a"
    return "yes" if x else "no"


def render_text(rep):
    """One finding per line with stable prefixes."""
    lines = ["name: %s" % rep["name"], "kind: %s" % rep["kind"]]
    if rep["kind"] == "affine_realization":
        lines.append("dimensions: n=%d m=%d" % (rep["n"], rep["m"]))
        w = rep["witness"]
        lines.append("prehomogeneous: %s%s" % (_yn(rep["prehomogeneous"]),
                                               " (witness %s)" % ", ".join(w) if w else ""))
        for key, poly in sorted(rep["phi"].items()):
            lines.append("phi[%s]: %s" % (key, poly))
        if rep["delta"] is not None:
            lines.append("delta: %s" % rep["delta"])
            lines.append("simply transitive: %s" % _yn(rep["simply_transitive"]))
        lines.append("chi: %s" % ", ".join(rep["chi"]))
        lines.append("chi_GH: %s" % ", ".join(rep["chi_GH"]))
        lines.append("nilpotent: %s" % _yn(rep["nilpotent"]))
        lines.append("unipotent: %s" % _yn(rep["unipotent"]))
        lines.append("linear: %s" % _yn(rep["linear"]))
        if rep["absolute_class_vanishes"] is not None:
            lines.append("absolute class: %s" % ("vanishes" if rep["absolute_class_vanishes"] else "nonzero"))
            lines.append("relative class: %s" % ("vanishes" if rep["relative_class_vanishes"] else "nonzero"))
        if rep["top_relative_cohomology"] is not None:
            lines.append("H^n: %d" % rep["top_relative_cohomology"])
        verdict = rep["verdict"]
        if rep["criterion"]:
            verdict += " (%s)" % rep["criterion"]
        lines.append("verdict: %s" % verdict)
        lines.append("centralizer: dim %d, nilpotent %s" % (rep["centralizer_dim"],
                                                            _yn(rep["centralizer_nilpotent"])))
        if "witness_laws" in rep:
            lines.append("transformation laws: hold for %d witnesses" % rep["witness_laws"])
        for key in sorted(k for k in rep if k.startswith("invariant_")):
            lines.append("%s: %s" % (key.replace("_", " "), _yn(rep[key])))
    else:
        lines.append("dim: %d" % rep["dim"])
        lines.append("nilpotent: %s" % _yn(rep["nilpotent"]))
        lines.append("unimodular: %s" % _yn(rep["unimodular"]))
        lines.append("two-step: %s" % _yn(rep["two_step"]))
        lines.append("betti: %s" % ", ".join(str(b) for b in rep["betti"]))
        lines.append("H^n: %d" % rep["top_cohomology"])
        if "signature" in rep:
            lines.append("signature: (%d,%d)" % tuple(rep["signature"]))
            lines.append("biinvariant: %s" % _yn(rep["biinvariant"]))
            lines.append("flat biinvariant: %s" % _yn(rep["flat_biinvariant"]))
        if "center_dim" in rep:
            lines.append("decomposition: center %d, isotropic %d" % (rep["center_dim"], rep["isotropic_dim"]))
    if "open_orbits" in rep:
        desc = rep.get("orbit_description")
        lines.append("open orbits: %d%s" % (rep["open_orbits"], " (%s)" % desc if desc else ""))
    if "orbit_label" in rep:
        lines.append("orbit label: %s" % rep["orbit_label"])
    return "\n".join(lines) + "\n"


def document_for(obj, name, note=None, **extra):
    """Wrap a realization, algebra or metric algebra as a document."""
    from .lie import AffineRealization, LieAlgebra
    if isinstance(obj, AffineRealization):
        doc = AlgebraSpecDocument(name=name, kind="affine_realization", ambient_dim=obj.n,
                          labels=list(obj.algebra.labels), basis=list(obj.matrices), note=note)
    elif isinstance(obj, MetricLieAlgebra):
        doc = AlgebraSpecDocument(name=name, kind="metric", labels=list(obj.g.labels),
                          structure_constants=[list(r) for r in obj.g.constants],
                          gram=obj.gram, note=note)
    elif isinstance(obj, LieAlgebra):
        doc = AlgebraSpecDocument(name=name, kind="abstract", labels=list(obj.labels),
                          structure_constants=[list(r) for r in obj.constants], note=note)
    else:
        raise TypeError("cannot describe %r as a document" % (obj,))
    for k, v in extra.items():
        setattr(doc, k, v)
    return doc
