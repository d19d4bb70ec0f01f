"""Exact arithmetic substrate: rational scalars, dense matrices, polynomials.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable row tuples;
rank, kernels and determinants go through fraction-free integer elimination
(see :mod:`phg.kernels`).  Nothing here ever touches floating point.
"""

from fractions import Fraction
from functools import reduce
from math import lcm
import itertools
import re

from . import kernels
from .errors import DimensionGuard, ParseError

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def scalar(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("boolean is not a rational scalar: %r" % (x,))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _SCALAR_RE.match(x)
        if m is None:
            raise ParseError("malformed rational %r" % (x,))
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError("zero denominator in %r" % (x,))
        return Fraction(num, den)
    raise ParseError("not a rational scalar: %r" % (x,))


def format_scalar(x):
    return str(Fraction(x))


def vector(xs):
    return tuple(scalar(x) for x in xs)


def is_zero_vector(v):
    return not any(v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def unit(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def lin_comb(coeffs, vectors, length):
    out = [ZERO] * length
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(scalar(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(unit(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [vector(c) for c in cols]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls._raw(tuple(zip(*cols)), len(cols))

    @classmethod
    def diag(cls, entries):
        entries = vector(entries)
        n = len(entries)
        return cls._raw(tuple(tuple(entries[i] if i == j else ZERO for j in range(n))
                              for i in range(n)), n)

    @classmethod
    def block(cls, blocks):
        """Assemble from a grid of matrices (rows of blocks)."""
        rows = []
        for brow in blocks:
            for i in range(brow[0].nrows):
                rows.append(tuple(itertools.chain.from_iterable(b.rows[i] for b in brow)))
        return cls._raw(tuple(rows), len(rows[0]) if rows else 0)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self):
        if self.nrows == 0:
            return Matrix._raw(tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    def submatrix(self, row_idx, col_idx):
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx),
                           len(col_idx))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __add__(self, other):
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def __mul__(self, c):
        c = scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(sum((a * col[k] for k, a in nz), ZERO) for col in cols))
            return Matrix._raw(tuple(out), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(dot(r, v) for r in self.rows)

    def __pow__(self, k):
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def commutator(self, other):
        return self @ other - other @ self

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.nrows, self.ncols))), ZERO)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def is_square(self):
        return self.nrows == self.ncols

    def flat(self):
        return tuple(itertools.chain.from_iterable(self.rows))

    def rank(self):
        return rank(self)

    def kernel(self):
        return kernel_basis(self)

    def det(self):
        return determinant(self)

    def inverse(self):
        return inverse(self)

    def is_nilpotent(self):
        if self.nrows == 0:
            return True
        return (self ** self.nrows).is_zero()

    def __repr__(self):
        return "Matrix(%s)" % ([[format_scalar(x) for x in r] for r in self.rows],)


def as_matrix(m):
    return m if isinstance(m, Matrix) else Matrix(m)


def _integer_rows(rows):
    out = []
    for r in rows:
        den = reduce(lcm, (x.denominator for x in r), 1)
        out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def echelon_form(m):
    """Fraction-free echelon of ``m`` (rows scaled to integers first)."""
    m = as_matrix(m)
    return kernels.echelon(_integer_rows(m.rows), m.ncols)


def rank(m):
    """Exact rank over the rationals.

    >>> rank(Matrix([[1, 2], [2, 4]]))
    1
    """
    m = as_matrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return echelon_form(m)[0]


def _back_substitute(ech, r, pivots, ncols, free_values, rhs=None):
    x = dict(free_values)
    for k in range(r - 1, -1, -1):
        pc = pivots[k]
        row = ech[k]
        s = Fraction(rhs[k]) if rhs is not None else ZERO
        for j in range(pc + 1, ncols):
            if row[j] and x.get(j):
                s -= row[j] * x[j]
        x[pc] = s / row[pc]
    return tuple(x.get(j, ZERO) for j in range(ncols))


def kernel_basis(m):
    """Canonical (reduced-echelon) basis of the right null space."""
    m = as_matrix(m)
    n = m.ncols
    if m.nrows == 0:
        return [unit(n, j) for j in range(n)]
    r, pivots, _, ech = echelon_form(m)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        free = {j: ZERO for j in range(n) if j not in pivset}
        free[f] = ONE
        basis.append(_back_substitute(ech, r, pivots, n, free))
    return basis


def solve(m, b):
    """Some solution x of ``m x = b``, or None when inconsistent."""
    m = as_matrix(m)
    b = vector(b)
    n = m.ncols
    if m.nrows == 0:
        return (ZERO,) * n
    aug = Matrix._raw(tuple(r + (bi,) for r, bi in zip(m.rows, b)), n + 1)
    r, pivots, _, ech = echelon_form(aug)
    if pivots and pivots[-1] == n:
        return None
    rhs = [ech[k][n] for k in range(r)]
    # the augmented column is the right-hand side of the echelon system
    return _back_substitute([row[:n] for row in ech], r, pivots, n, {}, rhs)


def determinant(m):
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    if m.nrows == 0:
        return ONE
    scale = ONE
    for r in m.rows:
        scale *= reduce(lcm, (x.denominator for x in r), 1)
    return Fraction(kernels.det(_integer_rows(m.rows))) / scale


def inverse(m):
    m = as_matrix(m)
    n = m.nrows
    cols = []
    for j in range(n):
        x = solve(m, unit(n, j))
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return Matrix.from_columns(cols)


def span_basis(vectors, length):
    """An echelon basis of the span of ``vectors`` (rows)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    m = Matrix._raw(tuple(tuple(v) for v in vectors), length)
    r, pivots, _, ech = echelon_form(m)
    return [tuple(Fraction(x) for x in ech[k]) for k in range(r)]


def in_span(basis, v):
    if not any(v):
        return True
    if not basis:
        return False
    return coordinates(basis, v) is not None


def coordinates(basis, v):
    """Coefficients c with sum c_i basis_i = v, or None."""
    if not basis:
        return () if not any(v) else None
    return solve(Matrix.from_columns(basis), v)


def complement_basis(subspace, length, candidates=None):
    """Greedy extension of ``subspace`` by candidate vectors (default: units)."""
    if candidates is None:
        candidates = [unit(length, i) for i in range(length)]
    current = list(subspace)
    r = rank(Matrix._raw(tuple(current), length)) if current else 0
    picked = []
    for c in candidates:
        trial = current + [c]
        rr = rank(Matrix._raw(tuple(tuple(x) for x in trial), length))
        if rr > r:
            current.append(tuple(c))
            picked.append(tuple(c))
            r = rr
    return picked


def intersect(a, b, length):
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    m = Matrix.from_columns(list(a) + [vscale(-ONE, v) for v in b])
    out = [lin_comb(k[:len(a)], a, length) for k in kernel_basis(m)]
    return span_basis(out, length)


def nilpotent_exp(m):
    """exp of a nilpotent matrix as a finite series (exact)."""
    m = as_matrix(m)
    if not m.is_nilpotent():
        raise ValueError("exp is only exact for nilpotent matrices")
    out = Matrix.identity(m.nrows)
    term = Matrix.identity(m.nrows)
    for k in range(1, m.nrows + 1):
        term = (term @ m) * Fraction(1, k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(e):
    return (sum(e), e)


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions and must not be
    mutated.  Printing and iteration use descending graded-lex order.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                c = scalar(c)
                if c:
                    clean[e] = clean.get(e, ZERO) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars, c):
        c = scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def linear(cls, coeffs, const=0):
        """sum_i coeffs[i] x_i + const"""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = scalar(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        const = scalar(const)
        if const:
            terms[(0,) * n] = const
        return cls._raw(n, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = scalar(other)
            if not c:
                return Polynomial._raw(self.nvars, {})
            return Polynomial._raw(self.nvars, {e: c * a for e, a in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            other = scalar(other)
        except (ParseError, TypeError):
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: other} if other else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def __call__(self, point):
        point = vector(point)
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def substitute(self, polys):
        """Compose: replace x_i by ``polys[i]`` (all in a common ring)."""
        nv = polys[0].nvars if polys else 0
        out = Polynomial._raw(nv, {})
        powers = [{0: Polynomial.constant(nv, 1)} for _ in polys]

        def pw(i, k):
            if k not in powers[i]:
                powers[i][k] = pw(i, k - 1) * polys[i]
            return powers[i][k]

        for e, c in self.terms.items():
            t = Polynomial.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _grlex_key(ec[0]), reverse=True)

    def primitive_ratio(self, other):
        """The scalar r with self == r * other, or None."""
        if other.is_zero():
            return ONE if self.is_zero() else None
        lead_e, lead_c = other.sorted_terms()[0]
        r = self.terms.get(lead_e, ZERO) / lead_c
        return r if self == other * r else None

    def format(self, names=None):
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else "%s^%d" % (n, k)
                            for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_scalar(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (format_scalar(a), mono)
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += " %s %s" % (sign, body)
        return s

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "Polynomial(%d, %r)" % (self.nvars, self.format())


def default_names(n):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return ["x%d" % (i + 1) for i in range(n)]


MAX_POLY_DET_SIZE = 8


def poly_determinant(grid, max_size=MAX_POLY_DET_SIZE):
    """Determinant of a square grid of polynomials by expansion in minors.

    Minors are memoised on their column set, so the cost is O(k 2^k) products
    for a k x k grid; ``max_size`` guards against runaway sizes.
    """
    k = len(grid)
    if any(len(row) != k for row in grid):
        raise ValueError("poly_determinant needs a square grid")
    if k > max_size:
        raise DimensionGuard("polynomial determinant of size %d exceeds guard %d" % (k, max_size))
    if k == 0:
        raise ValueError("empty grid has no ring")
    nv = grid[0][0].nvars
    memo = {}

    def minor(r, cols):
        if r == k:
            return Polynomial.constant(nv, 1)
        if cols in memo:
            return memo[cols]
        acc = Polynomial._raw(nv, {})
        for pos, j in enumerate(cols):
            entry = grid[r][j]
            if entry.is_zero():
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(k)))
