"""Orbit differentials, the characteristic map and decisions about open orbits.

For an affine realization with basis B_i = [[l_i, v_i], [0, 0]] the orbit
differential at x is the n x m matrix tau_x whose i-th column is l_i x + v_i.
Its n x n minors, as polynomials in x, are the components of the
characteristic form Phi; in the etale case m = n the single minor is delta.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from math import comb
import random

from .errors import (DimensionGuard, InvariantError, NotEtaleAt, NotEtaleDimension,
                     NotPrehomogeneousAt, ValidationError)
from .exact import (ONE, ZERO, Matrix, Polynomial, default_names, determinant,
                    format_scalar, inverse, kernel_basis, poly_determinant, solve,
                    unit, vector)
from .koszul import Cochain, RelativeComplex, chi_bar, subsets, wedge
from .lie import Subalgebra, centralizer_in_aff, is_unipotent_realization

MAX_COMPONENTS = 2000


class Verdict(str, Enum):
    TRANSITIVE = "Transitive"
    NOT_TRANSITIVE = "NotTransitive"
    NOT_APPLICABLE = "NotApplicable"


CRIT_NILPOTENT = "nilpotent group with open orbit: transitive iff volume preserving"
CRIT_ETALE = "etale: simply transitive iff the relative invariant is a nonzero constant"
CRIT_CHARACTER = "transitive only if the G/H unimodular character is trivial on the normaliser"
CRIT_NO_OPEN_ORBIT = "characteristic form vanishes identically: no open orbit"


class OrbitDifferential:
    """Symbolic n x m grid of affine-linear polynomials."""

    def __init__(self, r):
        self.r = r
        n = r.n
        self.grid = [[None] * r.m for _ in range(n)]
        for i in range(r.m):
            L = r.linear_part(i)
            v = r.translation(i)
            for a in range(n):
                self.grid[a][i] = Polynomial.linear(L.rows[a], v[a])

    def at(self, x):
        """Numeric tau_x, computed from the matrices directly."""
        r = self.r
        xh = tuple(vector(x)) + (ONE,)
        cols = [(B @ xh)[:r.n] for B in r.matrices]
        return Matrix.from_columns(cols, r.n)

    def columns(self, S):
        return [[self.grid[a][i] for i in S] for a in range(self.r.n)]


class CharacteristicForm:
    """Components of Phi indexed by the n-subsets of the basis."""

    def __init__(self, n, m, components):
        self.n = n
        self.m = m
        self.subsets = subsets(m, n) if m >= n else []
        self.components = list(components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def at(self, x):
        """Phi_x as an n-cochain on g."""
        return Cochain(self.m, self.n, [c(x) for c in self.components])

    def nonzero_at(self, x):
        return any(c(x) for c in self.components)

    def as_dict(self, names=None):
        names = names or default_names(self.n)
        return {",".join(str(i + 1) for i in S): c.format(names)
                for S, c in zip(self.subsets, self.components) if not c.is_zero()}


def characteristic_map(r, max_components=MAX_COMPONENTS):
    n, m = r.n, r.m
    if m < n:
        return CharacteristicForm(n, m, [])
    if comb(m, n) > max_components:
        raise DimensionGuard("characteristic map has %d components, guard is %d"
                             % (comb(m, n), max_components))
    od = OrbitDifferential(r)
    comps = [poly_determinant(od.columns(S)) for S in subsets(m, n)]
    return CharacteristicForm(n, m, comps)


def _witness_candidates(n, seed):
    yield (ZERO,) * n
    for i in range(n):
        yield unit(n, i)
    vals = [ONE, -ONE, Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2)]
    for k, p in enumerate(product(vals, repeat=n)):
        if k >= 4096:
            break
        yield p
    rng = random.Random(seed)
    for _ in range(2000):
        yield tuple(Fraction(rng.randint(-16, 16), rng.randint(1, 8)) for _ in range(n))


def find_witness(phi, seed=0):
    """First candidate point where some component of Phi is nonzero."""
    if phi.is_zero():
        return None
    for p in _witness_candidates(phi.n, seed):
        if phi.nonzero_at(p):
            return tuple(p)
    raise InvariantError("nonzero characteristic form vanished on every candidate point")


def is_prehomogeneous(r, seed=0, phi=None):
    """``(flag, witness)``; the flag is decided symbolically."""
    if r.m < r.n:
        return False, None
    phi = phi or characteristic_map(r)
    w = find_witness(phi, seed)
    return w is not None, w


# delta is a Polynomial in n variables, defined when m = n
RelativeInvariant = Polynomial


def relative_invariant(r):
    if r.m != r.n:
        raise NotEtaleDimension("relative invariant needs dim g = n (got m=%d, n=%d)" % (r.m, r.n))
    return poly_determinant(OrbitDifferential(r).grid)


def char_chi(r):
    """trace l - trace ad, the infinitesimal character of the etale theory."""
    return tuple(a - b for a, b in zip(r.trace_linear(), r.algebra.trace_ad()))


def stabilizer(r, x):
    """h = ker tau_x as a subalgebra of g."""
    tau = OrbitDifferential(r).at(x)
    return Subalgebra(r.algebra, kernel_basis(tau) if r.n else [unit(r.m, i) for i in range(r.m)])


def char_chi_GH(r, x):
    """``(normaliser basis, values)`` of trace l - trace ad_{g/h} with h = g_x."""
    h = stabilizer(r, x)
    return chi_bar(r.algebra, h, r.trace_linear())


def is_simply_transitive_etale(r, delta=None):
    delta = delta if delta is not None else relative_invariant(r)
    const = delta.is_constant() and not delta.is_zero()
    if not delta.is_zero():
        trivial = not any(char_chi(r))
        if const != trivial:
            raise InvariantError("constant relative invariant disagrees with the character test")
    return const


def decide_transitive_nilpotent(r, seed=0, phi=None):
    """``(Verdict, criterion)`` for nilpotent g with an open orbit."""
    if not r.algebra.is_nilpotent():
        return Verdict.NOT_APPLICABLE, None
    pre, _ = is_prehomogeneous(r, seed, phi)
    if not pre:
        return Verdict.NOT_APPLICABLE, None
    if any(r.trace_linear()):
        return Verdict.NOT_TRANSITIVE, CRIT_NILPOTENT
    if not is_unipotent_realization(r):
        raise InvariantError("volume preserving nilpotent realization is not unipotent")
    return Verdict.TRANSITIVE, CRIT_NILPOTENT


# ---------------------------------------------------------------------------
# characteristic classes


@dataclass
class ClassResult:
    vanishes: bool
    representative: Cochain = None
    primitive: Cochain = None


def _phi_cochain(r, x, phi=None):
    x = vector(x) if x is not None else (ZERO,) * r.n
    phi = phi or characteristic_map(r)
    return phi.at(x), x


def fundamental_complex(r, h=None):
    return RelativeComplex(r.algebra, h, r.trace_linear())


def absolute_class(r, x=None, phi=None):
    if r.m < r.n:
        return ClassResult(True, None)
    c, x = _phi_cochain(r, x, phi)
    cx = fundamental_complex(r)
    if not cx.is_cocycle(c):
        raise InvariantError("characteristic form is not a cocycle")
    vanishes = cx.is_coboundary(c)
    return ClassResult(vanishes, c, cx.primitive(c) if vanishes else None)


def relative_class(r, x=None, phi=None):
    if r.m < r.n:
        return ClassResult(True, None)
    c, x = _phi_cochain(r, x, phi)
    h = stabilizer(r, x)
    cx = fundamental_complex(r, h)
    if not cx.is_cocycle(c) or not cx.contains(c):
        raise InvariantError("characteristic form at x is not a relative cocycle")
    vanishes = cx.is_coboundary(c)
    if not c.is_zero():
        top = cx.cohomology_dim(cx.n)
        if vanishes != (top == 0):
            raise InvariantError("relative class disagrees with the top cohomology dimension")
    return ClassResult(vanishes, c)


def phi_cocycle_symbolic(r, phi=None):
    """d Phi = 0 as polynomials, twisted by trace l."""
    phi = phi or characteristic_map(r)
    if r.n >= r.m:
        return True
    D = fundamental_complex(r).boundary(r.n)
    zero = Polynomial(r.n)
    for row in D.rows:
        acc = zero
        for c, p in zip(row, phi.components):
            if c:
                acc = acc + p * c
        if not acc.is_zero():
            return False
    return True


def radiance_cocycle(r):
    """u as the n x m matrix of translation parts; its cocycle law is checked."""
    U = Matrix.from_columns(r.translations(), r.n)
    g = r.algebra
    for i in range(r.m):
        for j in range(i + 1, r.m):
            lhs = [a - b for a, b in zip(r.linear_part(i) @ r.translation(j),
                                          r.linear_part(j) @ r.translation(i))]
            rhs = U @ g.constants[i][j]
            if tuple(lhs) != tuple(rhs):
                raise InvariantError("translation parts fail the cocycle law at (%d, %d)" % (i, j))
    return U


def radiance_top_power(r):
    """Lambda^n u paired with the parallel volume, via a wedge of coordinates."""
    U = radiance_cocycle(r)
    m, n = r.m, r.n
    if m < n:
        return None
    out = Cochain(m, 0, [ONE])
    for a in range(n):
        out = wedge(out, Cochain(m, 1, U.rows[a]))
    return out


def transitivity_necessary_check(r, x, phi=None):
    phi = phi or characteristic_map(r)
    if r.m < r.n or not phi.nonzero_at(x):
        raise NotPrehomogeneousAt("characteristic form vanishes at the given point")
    return not any(char_chi_GH(r, x)[1])


# ---------------------------------------------------------------------------
# left-symmetric products


def lsa_product(table, u, v):
    m = len(table)
    out = [ZERO] * m
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            for k, c in enumerate(table[i][j]):
                if c:
                    out[k] += a * b * c
    return tuple(out)


def is_left_symmetric(table):
    m = len(table)
    e = [unit(m, i) for i in range(m)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                xy_z = lsa_product(table, table[i][j], e[k])
                x_yz = lsa_product(table, e[i], table[j][k])
                yx_z = lsa_product(table, table[j][i], e[k])
                y_xz = lsa_product(table, e[j], table[i][k])
                if any(a - b - c + d for a, b, c, d in zip(xy_z, x_yz, yx_z, y_xz)):
                    return False
    return True


def lsa_from_etale(r, x):
    """Product table ``t[i][j]`` of X_i . X_j pulled back along tau_x."""
    if r.m != r.n:
        raise NotEtaleDimension("etale point needs dim g = n")
    tau = OrbitDifferential(r).at(x)
    if not determinant(tau):
        raise NotEtaleAt("orbit differential is singular at the given point")
    inv = inverse(tau)
    cols = tau.columns()
    table = [[inv @ (r.linear_part(i) @ cols[j]) for j in range(r.m)] for i in range(r.m)]
    if not is_left_symmetric(table):
        raise InvariantError("pulled-back product is not left-symmetric")
    g = r.algebra
    for i in range(r.m):
        for j in range(r.m):
            comm = tuple(a - b for a, b in zip(table[i][j], table[j][i]))
            if comm != g.constants[i][j]:
                raise InvariantError("product commutator does not reproduce the bracket")
    return table


def invariant_form_check(r, B, kind="symmetric"):
    B = B if isinstance(B, Matrix) else Matrix(B)
    if B.shape != (r.n, r.n):
        raise ValidationError("form must be %d x %d" % (r.n, r.n))
    if kind == "symmetric" and B.T != B:
        raise ValidationError("form is not symmetric")
    if kind == "skew" and B.T != -B:
        raise ValidationError("form is not skew")
    if kind not in ("symmetric", "skew"):
        raise ValidationError("unknown form kind %r" % kind)
    return all((L.T @ B + B @ L).is_zero() for L in r.linear_parts())


# ---------------------------------------------------------------------------
# group elements


def affine_parts(A, n):
    A = A if isinstance(A, Matrix) else Matrix(A)
    if A.shape != (n + 1, n + 1) or A.rows[n] != (ZERO,) * n + (ONE,):
        raise ValidationError("group element must be an affine matrix of size %d" % (n + 1))
    L = A.submatrix(range(n), range(n))
    if not determinant(L):
        raise ValidationError("group element is not invertible")
    return A, L, tuple(A.rows[k][n] for k in range(n))


def adjoint_matrix(r, A):
    """c(A) with A B_i A^-1 = sum_k c_ki B_k; raises if A does not normalise g."""
    A, _, _ = affine_parts(A, r.n)
    Ai = inverse(A)
    basis = Matrix.from_columns([B.flat() for B in r.matrices])
    cols = []
    for B in r.matrices:
        c = solve(basis, (A @ B @ Ai).flat())
        if c is None:
            raise ValidationError("group element does not normalise the algebra")
        cols.append(c)
    return Matrix.from_columns(cols, r.m)


def act(A, x):
    xh = tuple(vector(x)) + (ONE,)
    return (A @ xh)[:-1]


def pullback_components(phi, M):
    """(M* Phi)_S = sum_T det M[T, S] Phi_T."""
    out = []
    for S in phi.subsets:
        acc = Polynomial(phi.n)
        for T, p in zip(phi.subsets, phi.components):
            if p.is_zero():
                continue
            d = determinant(M.submatrix(T, S))
            if d:
                acc = acc + p * d
        out.append(acc)
    return out


def fundform_law_holds(r, A, phi=None):
    """Phi_{Ax} = det l(A) * Phi_x(c(A)^-1 .) as polynomial identities."""
    phi = phi or characteristic_map(r)
    if r.m < r.n:
        return True
    A, L, t = affine_parts(A, r.n)
    M = inverse(adjoint_matrix(r, A))
    sub = [Polynomial.linear(L.rows[a], t[a]) for a in range(r.n)]
    lhs = [p.substitute(sub) for p in phi.components]
    dl = determinant(L)
    rhs = [p * dl for p in pullback_components(phi, M)]
    return lhs == rhs


def delta_law_holds(r, A, delta=None):
    """delta(Ax) = det l(A) det c(A)^-1 delta(x)."""
    delta = delta if delta is not None else relative_invariant(r)
    A, L, t = affine_parts(A, r.n)
    c = adjoint_matrix(r, A)
    sub = [Polynomial.linear(L.rows[a], t[a]) for a in range(r.n)]
    return delta.substitute(sub) == delta * (determinant(L) / determinant(c))


def base_point_independent(r, x, y):
    """Phi_x - Phi_y is an absolute coboundary."""
    phi = characteristic_map(r)
    diff = phi.at(x) - phi.at(y)
    return fundamental_complex(r).is_coboundary(diff)


# ---------------------------------------------------------------------------
# report


@dataclass
class AnalysisReport:
    n: int
    m: int
    nilpotent: bool
    unimodular: bool
    unipotent: bool
    prehomogeneous: bool
    witness: tuple = None
    phi: dict = field(default_factory=dict)
    delta: str = None
    simply_transitive: bool = None
    chi: tuple = ()
    stabilizer_dim: int = None
    normalizer_dim: int = None
    chi_GH: tuple = ()
    absolute_class_vanishes: bool = None
    relative_class_vanishes: bool = None
    top_relative_cohomology: int = None
    linear: bool = False
    verdict: Verdict = Verdict.NOT_APPLICABLE
    criterion: str = None
    centralizer_dim: int = 0
    centralizer_nilpotent: bool = None

    def to_dict(self):
        d = asdict(self)
        d["verdict"] = self.verdict.value
        d["witness"] = None if self.witness is None else [format_scalar(a) for a in self.witness]
        d["chi"] = [format_scalar(a) for a in self.chi]
        d["chi_GH"] = [format_scalar(a) for a in self.chi_GH]
        return d


def analyze(r, at=None, seed=0):
    g = r.algebra
    n, m = r.n, r.m
    phi = characteristic_map(r)
    pre, witness = is_prehomogeneous(r, seed, phi)
    if at is not None:
        at = vector(at)
        if len(at) != n:
            raise ValidationError("point must have %d coordinates" % n)
    x = at if at is not None else (witness if witness is not None else (ZERO,) * n)
    rep = AnalysisReport(n=n, m=m, nilpotent=g.is_nilpotent(), unimodular=g.is_unimodular(),
                         unipotent=is_unipotent_realization(r), prehomogeneous=pre,
                         witness=witness, phi=phi.as_dict(), chi=char_chi(r),
                         linear=r.is_linear())
    delta = None
    if m == n:
        delta = relative_invariant(r)
        rep.delta = delta.format(default_names(n))
        rep.simply_transitive = is_simply_transitive_etale(r, delta)
    h = stabilizer(r, x)
    rep.stabilizer_dim = h.dim
    nb, vals = chi_bar(g, h, r.trace_linear())
    rep.normalizer_dim = len(nb)
    rep.chi_GH = tuple(vals)
    if m >= n:
        rep.absolute_class_vanishes = absolute_class(r, x, phi).vanishes
        rep.relative_class_vanishes = relative_class(r, x, phi).vanishes
        if phi.nonzero_at(x):
            rep.top_relative_cohomology = fundamental_complex(r, h).cohomology_dim(m - h.dim)
    verdict, crit = decide_transitive_nilpotent(r, seed, phi)
    if verdict is Verdict.NOT_APPLICABLE:
        if not pre:
            verdict, crit = Verdict.NOT_TRANSITIVE, CRIT_NO_OPEN_ORBIT
        elif delta is not None:
            verdict = Verdict.TRANSITIVE if rep.simply_transitive else Verdict.NOT_TRANSITIVE
            crit = CRIT_ETALE
        elif not transitivity_necessary_check(r, witness, phi):
            verdict, crit = Verdict.NOT_TRANSITIVE, CRIT_CHARACTER
    rep.verdict, rep.criterion = verdict, crit
    cent = centralizer_in_aff(r)
    rep.centralizer_dim = len(cent)
    rep.centralizer_nilpotent = all(N.is_nilpotent() for N in cent)
    if verdict is Verdict.TRANSITIVE and not all(N.trace() == 0 for N in cent):
        raise InvariantError("centraliser of a transitive realization has nonzero trace")
    return rep
