"""Command-line interface.

Exit status is 0 on success, 1 for invalid input and 2 when an internal
identity fails.
"""

import argparse
import json
import os
import sys

from . import catalog
from .constructions import (MetricLieAlgebra, affinization, coadjoint_extension,
                            dual_tube_realization, is_flat_biinvariant, omega_det, signature)
from .errors import InvariantError, ParseError, ValidationError
from .exact import format_scalar, vector
from .io import dumps, save
from .koszul import RelativeComplex, chi_bar
from .lie import Subalgebra
from .prehomog import invariant_form_check, is_prehomogeneous, relative_invariant


def _csv_scalars(text, what):
    try:
        return vector(s for s in text.split(",") if s.strip())
    except ParseError as exc:
        raise ParseError("bad %s: %s" % (what, exc)) from None


def _seed(args):
    env = os.environ.get("PHG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError("PHG_SEED must be an integer, got %r" % env) from None
    return args.seed


def _emit(args, doc, summary):
    if getattr(args, "output", None):
        save(doc, args.output)
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write("\n".join(summary) + "\n")


def cmd_analyze(args):
    doc = catalog.resolve(args.file)
    at = _csv_scalars(args.at, "point") if args.at else None
    rep = catalog.run_analysis(doc, at=at, seed=_seed(args))
    if args.format == "json":
        sys.stdout.write(json.dumps(rep, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    else:
        sys.stdout.write(catalog.render_text(rep))
    return 0


def cmd_cohomology(args):
    doc = catalog.resolve(args.file)
    g = doc.algebra()
    m = g.dim
    idx = []
    if args.h:
        for s in args.h.split(","):
            s = s.strip()
            if not s:
                continue
            if not s.isdigit() or not 1 <= int(s) <= m:
                raise ValidationError("subalgebra index %r out of range 1..%d" % (s, m))
            idx.append(int(s) - 1)
    h = Subalgebra(g, [tuple(1 if j == i else 0 for j in range(m)) for i in idx])
    lam = _csv_scalars(args.lam, "character") if args.lam else (0,) * m
    cx = RelativeComplex(g, h, lam)
    top = cx.n
    k = top if args.degree is None else args.degree
    _, vals = chi_bar(g, h, cx.lam)
    out = [
        "dim g/h: %d" % top,
        "H^%d: %d" % (k, cx.cohomology_dim(k)),
        "betti: %s" % ", ".join(str(b) for b in cx.betti()),
        "H^n: %d" % cx.cohomology_dim(top),
        "chi_bar: %s" % ", ".join(format_scalar(v) for v in vals),
        "character criterion: H^n %s" % ("nonzero" if not any(vals) else "zero"),
    ]
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _load_omega(path, k):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno) from None
    if isinstance(data, dict):
        data = data.get("omega")
    if not isinstance(data, list) or len(data) != k:
        raise ParseError("omega must be a %d x %d grid of %d-covectors" % (k, k, k), field="omega")
    return [[vector(v) for v in row] for row in data]


def cmd_coadjoint(args):
    doc = catalog.resolve(args.base)
    n = doc.algebra()
    if args.three_form:
        if args.three_form != "det" or n.dim != 3:
            raise ValidationError("--three-form det needs a three-dimensional base")
        omega = omega_det()
    elif args.omega:
        omega = _load_omega(args.omega, n.dim)
    else:
        omega = None
    M = coadjoint_extension(n, omega)
    p, q = signature(M.gram)
    out = catalog.document_for(M, args.name or "t_%s" % doc.name,
                           "coadjoint extension of %s" % doc.name)
    summary = ["name: %s" % out.name, "dim: %d" % M.dim,
               "signature: (%d,%d)" % (p, q),
               "two-step: %s" % ("yes" if M.g.is_two_step() else "no"),
               "flat biinvariant: %s" % ("yes" if is_flat_biinvariant(M) else "no")]
    _emit(args, out, summary)
    return 0


def cmd_tube(args):
    doc = catalog.resolve(args.file)
    if doc.kind != "affine_realization":
        raise ValidationError("dual tube needs an affine realization")
    r = doc.build()
    tube, (K, W, J) = dual_tube_realization(r)
    out = catalog.document_for(tube, args.name or "%s_tube" % doc.name,
                           "dual tube of %s" % doc.name)
    out.forms = {"k": K, "omega": W, "J": J}
    pre, _ = is_prehomogeneous(tube, _seed(args))
    summary = ["name: %s" % out.name, "dimensions: n=%d m=%d" % (tube.n, tube.m),
               "prehomogeneous: %s" % ("yes" if pre else "no"),
               "invariant k: %s" % ("yes" if invariant_form_check(tube, K) else "no"),
               "invariant omega: %s" % ("yes" if invariant_form_check(tube, W, "skew") else "no")]
    _emit(args, out, summary)
    return 0


def cmd_affinize(args):
    doc = catalog.resolve(args.file)
    if doc.kind == "affine_realization":
        raise ValidationError("affinize needs an abstract or metric algebra")
    obj = doc.build()
    r = affinization(obj)
    out = catalog.document_for(r, args.name or "%s_affine" % doc.name,
                           "affinization of %s" % doc.name)
    delta = relative_invariant(r)
    summary = ["name: %s" % out.name, "dimensions: n=%d m=%d" % (r.n, r.m),
               "delta: %s" % delta]
    if isinstance(obj, MetricLieAlgebra):
        out.gram = obj.gram
        summary.append("invariant form: %s" % ("yes" if invariant_form_check(r, obj.gram) else "no"))
    _emit(args, out, summary)
    return 0


def cmd_catalog(args):
    if args.all:
        bad = 0
        for name, rep, mism in catalog.check_all(seed=_seed(args), workers=args.jobs):
            if mism:
                bad += 1
                detail = "; ".join("%s expected %r got %r" % m for m in mism)
                sys.stdout.write("%s: MISMATCH %s\n" % (name, detail))
            else:
                sys.stdout.write("%s: ok\n" % name)
        return 2 if bad else 0
    if args.name:
        sys.stdout.write(catalog.raw(args.name))
        return 0
    for name in catalog.names():
        doc = catalog.get(name)
        sys.stdout.write("%s\t%s\t%s\n" % (name, doc.kind, doc.note or ""))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="phg", description="Exact invariants of affine Lie algebra actions.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of a document")
    a.add_argument("file", help="path, '-' for stdin, or catalog:NAME")
    a.add_argument("--at", help="base point x1,..,xn (default: first witness)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cohomology", help="relative cohomology with a one-dimensional character")
    c.add_argument("file")
    c.add_argument("--h", default="", help="1-based basis indices spanning h")
    c.add_argument("--lambda", dest="lam", default="", help="character values c1,..,cm")
    c.add_argument("--degree", type=int)
    c.set_defaults(func=cmd_cohomology)

    k = sub.add_parser("construct", help="build derived algebras and realizations")
    ks = k.add_subparsers(dest="what", required=True)
    for name, fn, extra in (("coadjoint", cmd_coadjoint, "base"),
                            ("tube", cmd_tube, "file"),
                            ("affinize", cmd_affinize, "file")):
        q = ks.add_parser(name)
        q.add_argument(extra)
        q.add_argument("--format", choices=("text", "json"), default="text")
        q.add_argument("-o", "--output", help="also write the document here")
        q.add_argument("--name", help="name of the emitted document")
        q.add_argument("--seed", type=int, default=0)
        if name == "coadjoint":
            g = q.add_mutually_exclusive_group()
            g.add_argument("--omega", help="JSON grid of covectors")
            g.add_argument("--three-form", choices=("det",))
        q.set_defaults(func=fn)

    g = sub.add_parser("catalog", help="list, print or check bundled examples")
    g.add_argument("name", nargs="?")
    g.add_argument("--all", action="store_true", help="analyze every entry against its expected block")
    g.add_argument("--jobs", type=int, help="worker processes for --all")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print("internal invariant failed: %s" % exc, file=sys.stderr)
        return 2
    except ValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
