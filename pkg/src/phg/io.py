"""JSON documents describing algebras, and their canonical serialization.

A document is an object with ``"schema": 1`` and a ``kind`` of
``affine_realization``, ``abstract`` or ``metric``.  Rationals are written as
``"p/q"`` strings.  :func:`dumps` is canonical: sorted keys, two-space
indent, and every innermost list (a matrix row, a vector) on one line, so
``dumps(loads(dumps(doc))) == dumps(doc)``.
"""

from dataclasses import dataclass, field
import json
import sys

from .errors import ParseError, ValidationError
from .exact import Matrix, format_scalar, scalar

SCHEMA = 1
KINDS = ("affine_realization", "abstract", "metric")

# computed keys are compared against run_analysis; metadata keys are carried
EXPECTED_COMPUTED = (
    "prehomogeneous", "simply_transitive", "delta", "verdict", "criterion",
    "absolute_class_vanishes", "relative_class_vanishes", "top_relative_cohomology",
    "unipotent", "nilpotent", "unimodular", "chi", "linear", "stabilizer_dim",
    "betti", "signature", "biinvariant", "flat_biinvariant", "two_step",
    "center_dim", "isotropic_dim",
)
EXPECTED_METADATA = ("open_orbits", "orbit_description", "orbit_label")
EXPECTED_KEYS = EXPECTED_COMPUTED + EXPECTED_METADATA

TOP_KEYS = ("schema", "name", "kind", "ambient_dim", "labels", "basis",
            "structure_constants", "gram", "witness_elements", "expected", "note", "forms")


@dataclass
class AlgebraSpecDocument:
    name: str
    kind: str
    ambient_dim: int = None
    labels: list = None
    basis: list = None
    structure_constants: list = None
    gram: Matrix = None
    witness_elements: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)
    note: str = None
    forms: dict = None

    def build(self):
        """The lie_model / constructions object this document describes."""
        from .constructions import MetricLieAlgebra
        from .lie import LieAlgebra, realization_from_matrices
        if self.kind == "affine_realization":
            r = realization_from_matrices(self.ambient_dim, self.basis, self.labels)
            if self.structure_constants is not None:
                stored = _const_tuple(self.structure_constants)
                if stored != r.algebra.constants:
                    raise ValidationError("stored structure constants disagree with the matrices")
            return r
        g = LieAlgebra(self.structure_constants, self.labels)
        if self.kind == "metric":
            return MetricLieAlgebra(g, self.gram)
        return g

    def algebra(self):
        obj = self.build()
        if self.kind == "affine_realization":
            return obj.algebra
        if self.kind == "metric":
            return obj.g
        return obj

    def to_json(self):
        d = {"schema": SCHEMA, "name": self.name, "kind": self.kind}
        if self.ambient_dim is not None:
            d["ambient_dim"] = self.ambient_dim
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.basis is not None:
            d["basis"] = [_mat_out(B) for B in self.basis]
        if self.structure_constants is not None:
            d["structure_constants"] = [[[format_scalar(x) for x in v] for v in row]
                                        for row in self.structure_constants]
        if self.gram is not None:
            d["gram"] = _mat_out(self.gram)
        if self.witness_elements:
            d["witness_elements"] = [_mat_out(A) for A in self.witness_elements]
        if self.expected:
            d["expected"] = dict(self.expected)
        if self.note:
            d["note"] = self.note
        if self.forms:
            d["forms"] = {k: _mat_out(v) for k, v in self.forms.items()}
        return d


def _const_tuple(c):
    return tuple(tuple(tuple(v) for v in row) for row in c)


def _mat_out(M):
    return [[format_scalar(x) for x in row] for row in M.rows]


def _scalar(x, where):
    if isinstance(x, float):
        raise ParseError("floating point value %r; use a \"p/q\" string" % x, field=where)
    try:
        return scalar(x)
    except ParseError as exc:
        raise ParseError(str(exc), field=where) from None


def _matrix(obj, where, shape=None):
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError("expected a list of rows", field=where)
    rows = [[_scalar(x, "%s[%d][%d]" % (where, i, j)) for j, x in enumerate(r)]
            for i, r in enumerate(obj)]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("ragged matrix", field=where)
    M = Matrix(rows)
    if shape is not None and M.shape != shape:
        raise ValidationError("%s has shape %s, expected %s" % (where, M.shape, shape))
    return M


def from_json(d):
    if not isinstance(d, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(d) - set(TOP_KEYS)
    if unknown:
        raise ParseError("unknown keys %s" % sorted(unknown))
    if d.get("schema") != SCHEMA:
        raise ParseError("unsupported schema %r" % d.get("schema"), field="schema")
    name = d.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("missing document name", field="name")
    kind = d.get("kind")
    if kind not in KINDS:
        raise ParseError("kind must be one of %s" % ", ".join(KINDS), field="kind")
    doc = AlgebraSpecDocument(name=name, kind=kind, note=d.get("note"))
    labels = d.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise ParseError("labels must be a list of strings", field="labels")
        doc.labels = list(labels)
    if kind == "affine_realization":
        n = d.get("ambient_dim")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ParseError("ambient_dim must be a non-negative integer", field="ambient_dim")
        doc.ambient_dim = n
        basis = d.get("basis")
        if not isinstance(basis, list):
            raise ParseError("affine realization needs a basis", field="basis")
        doc.basis = [_matrix(B, "basis[%d]" % k, (n + 1, n + 1)) for k, B in enumerate(basis)]
    elif "basis" in d:
        raise ParseError("basis matrices only belong to affine realizations", field="basis")
    c = d.get("structure_constants")
    if c is not None:
        if not isinstance(c, list):
            raise ParseError("structure constants must be nested lists", field="structure_constants")
        m = len(c)
        out = []
        for i, row in enumerate(c):
            if not isinstance(row, list) or len(row) != m:
                raise ParseError("expected %d entries" % m, field="structure_constants[%d]" % i)
            r = []
            for j, v in enumerate(row):
                where = "structure_constants[%d][%d]" % (i, j)
                if not isinstance(v, list) or len(v) != m:
                    raise ParseError("expected %d coefficients" % m, field=where)
                r.append(tuple(_scalar(x, "%s[%d]" % (where, k)) for k, x in enumerate(v)))
            out.append(r)
        doc.structure_constants = out
    elif kind != "affine_realization":
        raise ParseError("%s algebra needs structure_constants" % kind, field="structure_constants")
    if "gram" in d:
        doc.gram = _matrix(d["gram"], "gram")
    elif kind == "metric":
        raise ParseError("metric algebra needs a gram matrix", field="gram")
    w = d.get("witness_elements", [])
    if not isinstance(w, list):
        raise ParseError("witness_elements must be a list", field="witness_elements")
    doc.witness_elements = [_matrix(A, "witness_elements[%d]" % k) for k, A in enumerate(w)]
    exp = d.get("expected", {})
    if not isinstance(exp, dict):
        raise ParseError("expected must be an object", field="expected")
    bad = set(exp) - set(EXPECTED_KEYS)
    if bad:
        raise ParseError("unknown expected keys %s" % sorted(bad), field="expected")
    doc.expected = dict(exp)
    forms = d.get("forms")
    if forms is not None:
        if not isinstance(forms, dict):
            raise ParseError("forms must be an object", field="forms")
        doc.forms = {k: _matrix(v, "forms.%s" % k) for k, v in forms.items()}
    return doc


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return from_json(d)


def load(path):
    """Read a document from a path, or from stdin when ``path`` is ``-``."""
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError("cannot read %s: %s" % (path, exc.strerror)) from None
    return loads(text)


def _dump(obj, indent):
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ["%s%s: %s" % (inner, json.dumps(k, ensure_ascii=False), _dump(obj[k], indent + 1))
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return json.dumps(list(obj), ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _dump(x, indent + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj):
    """Canonical text for a document or any JSON-ready value."""
    if isinstance(obj, AlgebraSpecDocument):
        obj = obj.to_json()
    return _dump(obj, 0) + "\n"


def save(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
