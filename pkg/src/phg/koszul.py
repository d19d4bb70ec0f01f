"""Koszul complex of a Lie algebra with one-dimensional twisted coefficients.

Cochains of degree k are coefficient vectors over the k-subsets of the basis
indices in lexicographic order; the coefficient at ``S = (s_1 < ... < s_k)``
is ``omega(X_{s_1}, ..., X_{s_k})``.
"""

from itertools import combinations
from math import comb

from .errors import DimensionGuard, NotACocycle, ValidationError
from .exact import ZERO, Matrix, kernel_basis, rank, solve, vector
from .lie import Subalgebra, character, normalizer, quotient_trace

MAX_KOSZUL_DIM = 12


def subsets(m, k):
    return list(combinations(range(m), k))


def _sort_sign(seq):
    """Sign of the sorting permutation and the sorted tuple; None on repeats."""
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return None
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def _guard(g, limit):
    lim = MAX_KOSZUL_DIM if limit is None else limit
    if g.dim > lim:
        raise DimensionGuard("algebra dimension %d exceeds the cochain guard %d" % (g.dim, lim))


class Cochain:
    """A k-cochain: coefficients over the lex-ordered k-subsets."""

    __slots__ = ("m", "degree", "coeffs")

    def __init__(self, m, degree, coeffs):
        coeffs = vector(coeffs)
        if len(coeffs) != comb(m, degree):
            raise ValidationError("a %d-cochain on a %d-dim algebra has %d coefficients, got %d"
                                  % (degree, m, comb(m, degree), len(coeffs)))
        self.m = m
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def from_dict(cls, m, degree, values):
        """``values`` maps index tuples (any order) to coefficients."""
        index = {S: i for i, S in enumerate(subsets(m, degree))}
        out = [ZERO] * len(index)
        for key, c in values.items():
            s = _sort_sign(key)
            if s is None:
                continue
            sign, S = s
            out[index[S]] += sign * vector([c])[0]
        return cls(m, degree, out)

    def as_dict(self):
        return {S: c for S, c in zip(subsets(self.m, self.degree), self.coeffs) if c}

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.m == other.m
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __add__(self, other):
        return Cochain(self.m, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Cochain(self.m, self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Cochain(self.m, self.degree, [-a for a in self.coeffs])

    def __repr__(self):
        return "Cochain(deg=%d, %r)" % (self.degree, self.as_dict())


class CochainSpace:
    """C^k(g, R_lam) with basis the lex-ordered k-subsets."""

    def __init__(self, g, degree, lam=None):
        self.g = g
        self.degree = degree
        self.lam = _lam(g, lam)

    @property
    def dim(self):
        return comb(self.g.dim, self.degree)

    def basis(self):
        return subsets(self.g.dim, self.degree)

    def zero(self):
        return Cochain(self.g.dim, self.degree, [ZERO] * self.dim)


def wedge(a, b):
    """Exterior product of real-valued cochains."""
    m = a.m
    out = {}
    for S, x in a.as_dict().items():
        for T, y in b.as_dict().items():
            s = _sort_sign(S + T)
            if s is None:
                continue
            sign, U = s
            out[U] = out.get(U, ZERO) + sign * x * y
    return Cochain.from_dict(m, a.degree + b.degree, out)


def _lam(g, lam):
    if lam is None:
        return (ZERO,) * g.dim
    return vector(lam)


def boundary_matrix(g, k, lam=None, limit=None):
    """Matrix of d : C^k -> C^{k+1} for coefficients twisted by ``lam``.

    dw(Y_0..Y_k) = sum_l (-1)^l lam(Y_l) w(..^Y_l..)
                 + sum_{r<s} (-1)^{r+s} w([Y_r, Y_s], ..^Y_r..^Y_s..)
    """
    _guard(g, limit)
    m = g.dim
    lam = _lam(g, lam)
    src = subsets(m, k)
    index = {S: i for i, S in enumerate(src)}
    tgt = subsets(m, k + 1)
    rows = []
    for T in tgt:
        row = [ZERO] * len(src)
        for l, y in enumerate(T):
            if lam[y]:
                S = T[:l] + T[l + 1:]
                row[index[S]] += (-1) ** l * lam[y]
        for r in range(len(T)):
            for s in range(r + 1, len(T)):
                rest = T[:r] + T[r + 1:s] + T[s + 1:]
                sgn = (-1) ** (r + s)
                for q, c in enumerate(g.constants[T[r]][T[s]]):
                    if not c:
                        continue
                    ss = _sort_sign((q,) + rest)
                    if ss is None:
                        continue
                    row[index[ss[1]]] += sgn * ss[0] * c
        rows.append(row)
    return Matrix(rows, len(src))


def contraction_matrix(g, x, k):
    """Matrix of iota_X : C^k -> C^{k-1}."""
    m = g.dim
    x = vector(x)
    src = subsets(m, k)
    index = {S: i for i, S in enumerate(src)}
    rows = []
    for R in subsets(m, k - 1):
        row = [ZERO] * len(src)
        for a, xa in enumerate(x):
            if not xa:
                continue
            ss = _sort_sign((a,) + R)
            if ss is not None:
                row[index[ss[1]]] += ss[0] * xa
        rows.append(row)
    return Matrix(rows, len(src))


def lie_derivative_matrix(g, x, k, lam=None):
    """Matrix of L_X w = lam(X) w - sum_i w(.., [X, Y_i], ..) on C^k."""
    m = g.dim
    x = vector(x)
    lam = _lam(g, lam)
    src = subsets(m, k)
    index = {S: i for i, S in enumerate(src)}
    lx = sum((a * b for a, b in zip(lam, x)), ZERO)
    rows = []
    for T in src:
        row = [ZERO] * len(src)
        if lx:
            row[index[T]] += lx
        for i, y in enumerate(T):
            br = g.bracket(x, g_unit(m, y))
            for q, c in enumerate(br):
                if not c:
                    continue
                ss = _sort_sign(T[:i] + (q,) + T[i + 1:])
                if ss is not None:
                    row[index[ss[1]]] -= ss[0] * c
        rows.append(row)
    return Matrix(rows, len(src))


def g_unit(m, i):
    return tuple(1 if j == i else 0 for j in range(m))


def apply(M, c, degree=None):
    """Apply a cochain operator; keeps the Cochain wrapper."""
    out = M @ c.coeffs
    deg = c.degree + 1 if degree is None else degree
    return Cochain(c.m, deg, out)


class RelativeComplex:
    """Relative cochains C^k(g, h, R_lam): h-invariant, vanishing on h."""

    def __init__(self, g, h=None, lam=None, limit=None, check_character=True):
        _guard(g, limit)
        self.g = g
        self.h = h if h is not None else Subalgebra.zero(g)
        if lam is None:
            lam = (ZERO,) * g.dim
        self.lam = character(g, lam) if check_character else vector(lam)
        self.limit = limit
        self._bases = {}
        self._d = {}

    @property
    def n(self):
        return self.g.dim - self.h.dim

    def boundary(self, k):
        if k not in self._d:
            self._d[k] = boundary_matrix(self.g, k, self.lam, self.limit)
        return self._d[k]

    def basis(self, k):
        """Columns spanning the relative k-cochains, as coefficient vectors."""
        if k not in self._bases:
            m = self.g.dim
            if k < 0 or k > m:
                self._bases[k] = []
            elif not self.h.basis:
                N = comb(m, k)
                self._bases[k] = [g_unit(N, i) for i in range(N)]
            else:
                rows = []
                for hb in self.h.basis:
                    if k > 0:
                        rows.extend(contraction_matrix(self.g, hb, k).rows)
                    rows.extend(lie_derivative_matrix(self.g, hb, k, self.lam).rows)
                self._bases[k] = kernel_basis(Matrix(rows, comb(m, k)))
        return self._bases[k]

    def dim(self, k):
        return len(self.basis(k))

    def _image(self, k):
        """Columns of d_k applied to the relative k-cochains."""
        B = self.basis(k)
        if not B or k >= self.g.dim:
            return []
        D = self.boundary(k)
        return [D @ b for b in B]

    def image_rank(self, k):
        cols = self._image(k)
        if not cols:
            return 0
        return rank(Matrix.from_columns(cols))

    def cohomology_dim(self, k):
        if k < 0 or k > self.g.dim:
            return 0
        return self.dim(k) - self.image_rank(k) - self.image_rank(k - 1)

    def betti(self):
        return [self.cohomology_dim(k) for k in range(self.g.dim + 1)]

    def contains(self, c):
        B = self.basis(c.degree)
        if not B:
            return c.is_zero()
        return solve(Matrix.from_columns(B), c.coeffs) is not None

    def is_cocycle(self, c):
        if c.degree >= self.g.dim:
            return True
        return not any(self.boundary(c.degree) @ c.coeffs)

    def is_coboundary(self, c):
        """Whether ``c`` is d of a relative (k-1)-cochain."""
        if not self.is_cocycle(c):
            raise NotACocycle("cochain of degree %d is not closed" % c.degree)
        if not self.contains(c):
            raise ValidationError("cochain is not relative to the subalgebra")
        if c.is_zero():
            return True
        cols = self._image(c.degree - 1) if c.degree > 0 else []
        if not cols:
            return False
        return solve(Matrix.from_columns(cols), c.coeffs) is not None

    def primitive(self, c):
        """Some relative (k-1)-cochain b with db = c, or None."""
        if c.degree == 0:
            return None
        B = self.basis(c.degree - 1)
        cols = self._image(c.degree - 1)
        if not cols:
            return None
        y = solve(Matrix.from_columns(cols), c.coeffs)
        if y is None:
            return None
        out = [ZERO] * comb(self.g.dim, c.degree - 1)
        for coef, b in zip(y, B):
            if coef:
                for i, v in enumerate(b):
                    out[i] += coef * v
        return Cochain(self.g.dim, c.degree - 1, out)

    def is_compatible(self, k):
        """d maps relative k-cochains into relative (k+1)-cochains."""
        if k >= self.g.dim:
            return True
        tgt = self.basis(k + 1)
        for col in self._image(k):
            if any(col):
                if not tgt or solve(Matrix.from_columns(tgt), col) is None:
                    return False
        return True


def cohomology_dim(g, h=None, lam=None, k=0, limit=None):
    return RelativeComplex(g, h, lam, limit).cohomology_dim(k)


def is_coboundary(c, g, h=None, lam=None, relative=True):
    cx = RelativeComplex(g, h if relative else None, lam)
    return cx.is_coboundary(c)


def chi_bar(g, h, lam):
    """Values of lam - trace ad_{g/h} on the normaliser basis of h.

    Returns ``(basis, values)``.
    """
    lam = _lam(g, lam)
    nb = normalizer(g, h)
    vals = []
    for x in nb:
        lx = sum((a * b for a, b in zip(lam, x)), ZERO)
        vals.append(lx - quotient_trace(g, h, x))
    return nb, vals


def top_relative_nonvanishing_by_character(g, h, lam):
    return not any(chi_bar(g, h, lam)[1])


def measure_character_admissible(g, h, lam):
    lam = _lam(g, lam)
    for hb in h.basis:
        lx = sum((a * b for a, b in zip(lam, hb)), ZERO)
        if lx != quotient_trace(g, h, hb):
            return False
    return True


def right_invariance_test(g, h, lam):
    return measure_character_admissible(g, h, lam) and top_relative_nonvanishing_by_character(g, h, lam)
