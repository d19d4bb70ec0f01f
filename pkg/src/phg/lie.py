"""Abstract Lie algebras and their affine realizations inside aff(n).

An element of aff(n) is an (n+1)x(n+1) matrix ``[[phi, v], [0, 0]]``: ``phi``
is its linear part, ``v`` its translation part.  A realization keeps the
basis matrices and the structure constants recomputed from them.
"""

import itertools

from .errors import (InvariantError, NotACharacter, NotASubalgebra, NotClosed,
                     NotIndependent, ValidationError)
from .exact import (ONE, ZERO, Matrix, coordinates, in_span, kernel_basis,
                    rank, solve, span_basis, unit, vector)


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    ``constants[i][j][k]`` is the coefficient of ``X_k`` in ``[X_i, X_j]``.
    Antisymmetry and the Jacobi identity are checked exactly on construction.
    """

    def __init__(self, constants, labels=None, check=True):
        m = len(constants)
        self.dim = m
        self.constants = tuple(tuple(vector(constants[i][j]) for j in range(m))
                               for i in range(m))
        for i in range(m):
            for j in range(m):
                if len(self.constants[i][j]) != m:
                    raise ValidationError("structure constants must be an m x m x m array")
        if labels is None:
            labels = ["X%d" % (i + 1) for i in range(m)]
        if len(labels) != m:
            raise ValidationError("expected %d labels, got %d" % (m, len(labels)))
        self.labels = list(labels)
        self._ad = None
        if check:
            self._validate()

    @classmethod
    def abelian(cls, m, labels=None):
        z = [[[0] * m for _ in range(m)] for _ in range(m)]
        return cls(z, labels, check=False)

    @classmethod
    def from_brackets(cls, m, brackets, labels=None):
        """Build from ``{(i, j): vector}``; missing pairs bracket to zero."""
        c = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
        for (i, j), v in brackets.items():
            v = vector(v)
            c[i][j] = list(v)
            c[j][i] = [-x for x in v]
        return cls(c, labels)

    def _validate(self):
        m = self.dim
        for i in range(m):
            for j in range(m):
                if any(a + b for a, b in zip(self.constants[i][j], self.constants[j][i])):
                    raise ValidationError("structure constants are not antisymmetric at (%d, %d)" % (i, j))
        for i, j, k in itertools.combinations(range(m), 3):
            e = [unit(m, t) for t in (i, j, k)]
            s = [ZERO] * m
            for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
                t = self.bracket(e[a], self.bracket(e[b], e[c]))
                for q in range(m):
                    s[q] += t[q]
            if any(s):
                raise ValidationError("Jacobi identity fails on basis triple (%d, %d, %d)" % (i, j, k))

    def basis_bracket(self, i, j):
        return self.constants[i][j]

    def bracket(self, u, v):
        m = self.dim
        out = [ZERO] * m
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def ad_basis(self):
        """Matrices of ad X_i; column j holds the coordinates of [X_i, X_j]."""
        if self._ad is None:
            m = self.dim
            self._ad = [Matrix.from_columns([self.constants[i][j] for j in range(m)])
                        if m else Matrix.zeros(0, 0) for i in range(m)]
        return self._ad

    def ad(self, v):
        m = self.dim
        out = Matrix.zeros(m, m)
        for a, A in zip(v, self.ad_basis()):
            if a:
                out = out + A * a
        return out

    def trace_ad(self):
        """The linear form X -> trace ad X as a coefficient vector."""
        return tuple(A.trace() for A in self.ad_basis())

    def derived_algebra(self):
        m = self.dim
        return span_basis([self.constants[i][j] for i in range(m) for j in range(i + 1, m)], m)

    def lower_central_series(self):
        """Bases of g, [g,g], [g,[g,g]], ...; stops when stable or zero."""
        m = self.dim
        series = [[unit(m, i) for i in range(m)]]
        for _ in range(m + 1):
            cur = series[-1]
            nxt = span_basis([self.bracket(unit(m, i), v) for i in range(m) for v in cur], m)
            if len(nxt) == len(cur):
                break
            series.append(nxt)
            if not nxt:
                break
        return series

    def is_nilpotent(self):
        return not self.lower_central_series()[-1]

    def nilpotency_class(self):
        series = self.lower_central_series()
        if series[-1]:
            return None
        return len(series) - 1

    def is_abelian(self):
        return not self.derived_algebra()

    def is_two_step(self):
        """Nilpotent of class at most two, i.e. [g,[g,g]] = 0."""
        c = self.nilpotency_class()
        return c is not None and c <= 2

    def is_unimodular(self):
        return not any(self.trace_ad())

    def center(self):
        m = self.dim
        if m == 0:
            return []
        rows = []
        for A in self.ad_basis():
            # [X_i, v] = ad(X_i) v; stack all and take the kernel
            rows.extend(A.rows)
        return kernel_basis(Matrix(rows, m))

    def is_solvable(self):
        m = self.dim
        cur = [unit(m, i) for i in range(m)]
        for _ in range(m + 1):
            nxt = span_basis([self.bracket(u, v) for u in cur for v in cur], m)
            if not nxt:
                return True
            if len(nxt) == len(cur):
                return False
            cur = nxt
        return False

    def __repr__(self):
        return "LieAlgebra(dim=%d, labels=%r)" % (self.dim, self.labels)


AbstractLieAlgebra = LieAlgebra


class Subalgebra:
    """A subalgebra h of ``parent`` spanned by coordinate vectors."""

    def __init__(self, parent, basis, check=True):
        self.parent = parent
        self.basis = span_basis([vector(b) for b in basis], parent.dim)
        if check:
            for u, v in itertools.combinations(self.basis, 2):
                if not in_span(self.basis, parent.bracket(u, v)):
                    raise NotASubalgebra("span is not closed under the bracket")

    @property
    def dim(self):
        return len(self.basis)

    @classmethod
    def zero(cls, parent):
        return cls(parent, [], check=False)

    @classmethod
    def generated_by(cls, parent, vectors):
        m = parent.dim
        basis = span_basis(vectors, m)
        while True:
            new = span_basis(basis + [parent.bracket(u, v) for u in basis for v in basis], m)
            if len(new) == len(basis):
                return cls(parent, new, check=False)
            basis = new

    def contains(self, v):
        return in_span(self.basis, v)

    def __repr__(self):
        return "Subalgebra(dim=%d in dim %d)" % (self.dim, self.parent.dim)


SubalgebraSpec = Subalgebra

# a linear form on g, as a tuple of Scalars vanishing on [g, g]
InfinitesimalCharacter = tuple


def character(g, values):
    """Validate a linear form on g as an infinitesimal character.

    A one-dimensional representation must vanish on [g, g]; otherwise the
    twisted Koszul differential does not square to zero.
    """
    values = vector(values)
    if len(values) != g.dim:
        raise ValidationError("character needs %d values, got %d" % (g.dim, len(values)))
    for v in g.derived_algebra():
        if sum((a * b for a, b in zip(values, v)), ZERO):
            raise NotACharacter("linear form does not vanish on [g, g]")
    return values


def normalizer(g, h):
    """Basis of n(g, h) = {X in g : [X, h] in h}."""
    m = g.dim
    if not h.basis:
        return [unit(m, i) for i in range(m)]
    ann = kernel_basis(Matrix(h.basis, m))
    if not ann:
        return [unit(m, i) for i in range(m)]
    P = Matrix(ann, m)
    rows = []
    for hb in h.basis:
        # [X, H] = -ad(H) X; the sign is irrelevant for the kernel
        rows.extend((P @ g.ad(hb)).rows)
    return kernel_basis(Matrix(rows, m))


def quotient_trace(g, h, x):
    """trace of ad X on g/h for X normalising h."""
    sub = ZERO
    for k, hb in enumerate(h.basis):
        c = coordinates(h.basis, g.bracket(x, hb))
        if c is None:
            raise ValidationError("element does not normalise the subalgebra")
        # diagonal entry of ad X restricted to h
        sub += c[k]
    return g.ad(x).trace() - sub


# ---------------------------------------------------------------------------
# affine realizations


def is_aff_matrix(B, n):
    return B.shape == (n + 1, n + 1) and not any(B.rows[n])


class AffineRealization:
    """Basis matrices ``B_i`` of a Lie subalgebra of aff(n)."""

    def __init__(self, n, matrices, algebra):
        self.n = n
        self.matrices = list(matrices)
        self.algebra = algebra

    @property
    def m(self):
        return len(self.matrices)

    def linear_part(self, i):
        n = self.n
        return self.matrices[i].submatrix(range(n), range(n))

    def translation(self, i):
        n = self.n
        return tuple(self.matrices[i].rows[k][n] for k in range(n))

    def linear_parts(self):
        return [self.linear_part(i) for i in range(self.m)]

    def translations(self):
        return [self.translation(i) for i in range(self.m)]

    def element(self, coeffs):
        out = Matrix.zeros(self.n + 1, self.n + 1)
        for c, B in zip(coeffs, self.matrices):
            if c:
                out = out + B * c
        return out

    def trace_linear(self):
        """X -> trace of the linear part, the character of R_l."""
        return tuple(self.linear_part(i).trace() for i in range(self.m))

    def is_linear(self):
        return not any(any(v) for v in self.translations())

    def __repr__(self):
        return "AffineRealization(n=%d, m=%d)" % (self.n, self.m)


def structure_constants_from_matrices(matrices):
    """Expand all commutators in the basis; raise NotClosed on failure."""
    m = len(matrices)
    flats = [B.flat() for B in matrices]
    basis_cols = Matrix.from_columns(flats) if flats else None
    c = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            comm = matrices[i].commutator(matrices[j]).flat()
            coeffs = solve(basis_cols, comm)
            if coeffs is None:
                raise NotClosed(i, j)
            c[i][j] = list(coeffs)
            c[j][i] = [-x for x in coeffs]
    return c


def realization_from_matrices(n, matrices, labels=None):
    """Check a list of aff(n) matrices and derive its structure constants."""
    mats = [m if isinstance(m, Matrix) else Matrix(m) for m in matrices]
    for k, B in enumerate(mats):
        if B.shape != (n + 1, n + 1):
            raise ValidationError("basis matrix %d has shape %s, expected %s"
                                  % (k, B.shape, (n + 1, n + 1)))
        if any(B.rows[n]):
            raise ValidationError("basis matrix %d has a nonzero last row" % k)
    if mats and rank(Matrix([B.flat() for B in mats])) < len(mats):
        raise NotIndependent("basis matrices are linearly dependent")
    c = structure_constants_from_matrices(mats)
    g = LieAlgebra(c, labels)
    return AffineRealization(n, mats, g)


def _elementary(n, a, b):
    rows = [[ZERO] * (n + 1) for _ in range(n + 1)]
    rows[a][b] = ONE
    return Matrix(rows)


def centralizer_in_aff(r, gram=None):
    """Basis of {phi in aff(n) : [phi, B_i] = 0 for all i}.

    With a Gram matrix the linear part is also required to be skew for it,
    giving the centraliser inside the infinitesimal isometries.
    """
    n = r.n
    unknowns = [(a, b) for a in range(n) for b in range(n + 1)]
    elems = [_elementary(n, a, b) for a, b in unknowns]
    columns = []
    for E in elems:
        col = []
        for B in r.matrices:
            col.extend(E.commutator(B).flat())
        if gram is not None:
            L = E.submatrix(range(n), range(n))
            col.extend((L.T @ gram + gram @ L).flat())
        columns.append(col)
    if not columns or not columns[0]:
        sol = [unit(len(elems), k) for k in range(len(elems))]
    else:
        sol = kernel_basis(Matrix.from_columns(columns))
    out = []
    for s in sol:
        M = Matrix.zeros(n + 1, n + 1)
        for c, E in zip(s, elems):
            if c:
                M = M + E * c
        out.append(M)
    return out


def is_associative_span(mats):
    """Products of basis matrices stay in their span (checked pairwise)."""
    if not mats:
        return True
    flats = [M.flat() for M in mats]
    for A in mats:
        for B in mats:
            if not in_span(flats, (A @ B).flat()):
                return False
    return True


def engel_flag(matrices, size):
    """Dimensions of V_0 = 0 < V_1 < ... with B V_{j+1} in V_j for all B.

    Returns the list of flag subspace bases; the last entry spans the whole
    space exactly when the matrices are simultaneously strictly triangular.
    """
    flag = [[]]
    while True:
        cur = flag[-1]
        if len(cur) == size:
            return flag
        if cur:
            ann = kernel_basis(Matrix(cur, size))
            P = Matrix(ann, size)
        else:
            P = Matrix.identity(size)
        rows = []
        for B in matrices:
            rows.extend((P @ B).rows)
        nxt = kernel_basis(Matrix(rows, size)) if rows else [unit(size, i) for i in range(size)]
        if len(nxt) == len(cur):
            return flag
        flag.append(span_basis(nxt, size))


def is_unipotent_realization(r):
    """True iff the matrix Lie algebra consists of nilpotent matrices."""
    size = r.n + 1
    flag = engel_flag(r.matrices, size)
    ok = len(flag[-1]) == size
    if ok and any(t for t in r.trace_linear()):
        raise InvariantError("unipotent realization with non-traceless linear part")
    return ok


def lie_closure(matrices, max_dim=None):
    """Basis of the matrix Lie algebra generated by ``matrices``."""
    mats = [m if isinstance(m, Matrix) else Matrix(m) for m in matrices]
    if not mats:
        return []
    size = mats[0].nrows
    basis = []
    flats = []

    def add(M):
        f = M.flat()
        if any(f) and not in_span(flats, f):
            basis.append(M)
            flats.append(f)
            return True
        return False

    frontier = [M for M in mats if add(M)]
    while frontier:
        new = []
        for A in frontier:
            for B in list(basis):
                C = A.commutator(B)
                if add(C):
                    new.append(C)
                    if max_dim is not None and len(basis) > max_dim:
                        raise ValidationError("generated algebra exceeds dimension %d" % max_dim)
        frontier = new
    if len(basis) > size * size:
        raise InvariantError("closure larger than the matrix algebra")
    return basis
