"""Metric Lie algebras, coadjoint extensions, dual tubes and affinizations.

The coadjoint extension of a k-dimensional algebra n by a cocycle omega lives
on n* + n with basis (f_1..f_k, e_1..e_k), f the dual basis.  Its brackets are

    [e_i, f_a] = ad*(e_i) f_a = -sum_j c[i][j][a] f_j
    [e_i, e_j] = omega(e_i, e_j) + [e_i, e_j]_n

and the neutral pairing <e_i, f_a> = delta_ia makes n and n* isotropic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (DegenerateForm, InvariantError, NotACocycle, NotFlatBiinvariant,
                     NotLeftSymmetric, NotTwoStep, NotTwoStepBase, ValidationError)
from .exact import (ONE, ZERO, Matrix, complement_basis, determinant, inverse,
                    kernel_basis, span_basis, unit, vector)
from .lie import LieAlgebra, realization_from_matrices

HALF = Fraction(1, 2)


def _pair(G, u, v):
    return sum((a * b for a, b in zip(u, G @ v)), ZERO)


class MetricLieAlgebra:
    """A Lie algebra with a nondegenerate symmetric Gram matrix."""

    def __init__(self, g, gram):
        gram = gram if isinstance(gram, Matrix) else Matrix(gram)
        if gram.shape != (g.dim, g.dim):
            raise ValidationError("Gram matrix must be %d x %d" % (g.dim, g.dim))
        if gram.T != gram:
            raise ValidationError("Gram matrix is not symmetric")
        if g.dim and not determinant(gram):
            raise DegenerateForm("Gram matrix is degenerate")
        self.g = g
        self.gram = gram

    @property
    def dim(self):
        return self.g.dim

    def pair(self, u, v):
        return _pair(self.gram, vector(u), vector(v))

    def signature(self):
        return signature(self.gram)

    def __repr__(self):
        return "MetricLieAlgebra(dim=%d, signature=%r)" % (self.dim, self.signature())


def neutral_gram(k):
    I = Matrix.identity(k)
    Z = Matrix.zeros(k, k)
    return Matrix.block([[Z, I], [I, Z]])


def signature(gram):
    """(n+, n-) by symmetric elimination over the rationals."""
    A = [list(r) for r in (gram if isinstance(gram, Matrix) else Matrix(gram)).rows]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j]), None)
            if pair is None:
                raise DegenerateForm("symmetric form is degenerate")
            i, j = pair
            # replace x_i by x_i + x_j: the new diagonal entry is 2 A_ij
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / p
            if f:
                for k in range(n):
                    A[i][k] -= f * A[piv][k]
        for i in active:
            A[piv][i] = A[i][piv] = ZERO
    return pos, neg


# ---------------------------------------------------------------------------
# biinvariance and curvature


def is_biinvariant(M):
    """<[X,Y],Z> = -<Y,[X,Z]> on all basis triples, i.e. every ad X is skew."""
    G = M.gram
    return all((A.T @ G + G @ A).is_zero() for A in M.g.ad_basis())


def a_operator(g, x):
    """A_X = (1/2) ad X, the Levi-Civita connection of a biinvariant metric."""
    return g.ad(vector(x)) * HALF


def curvature(g, x, y):
    """R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y] for nabla = (1/2) ad."""
    ax, ay = a_operator(g, x), a_operator(g, y)
    return ax.commutator(ay) - a_operator(g, g.bracket(vector(x), vector(y)))


def curvature_vanishes(g):
    m = g.dim
    e = [unit(m, i) for i in range(m)]
    return all(curvature(g, e[i], e[j]).is_zero() for i, j in combinations(range(m), 2))


def double_bracket_vanishes(g):
    """[X,[Y,Z]] = 0 on all basis triples."""
    m = g.dim
    e = [unit(m, i) for i in range(m)]
    return not any(any(g.bracket(e[i], g.constants[j][k]))
                   for i in range(m) for j in range(m) for k in range(m))


def is_flat_biinvariant(M):
    if not is_biinvariant(M):
        return False
    two = M.g.is_two_step()
    if curvature_vanishes(M.g) != two or double_bracket_vanishes(M.g) != two:
        raise InvariantError("curvature test disagrees with two-step nilpotency")
    return two


# ---------------------------------------------------------------------------
# coadjoint extensions


def zero_cocycle(k):
    return [[(ZERO,) * k for _ in range(k)] for _ in range(k)]


def omega_det():
    """omega(e1,e2) = f3, omega(e2,e3) = f1, omega(e3,e1) = f2 on R^3."""
    om = zero_cocycle(3)
    for i, j, l in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        om[i][j] = unit(3, l)
        om[j][i] = tuple(-a for a in unit(3, l))
    return om


def _check_omega(n, omega):
    k = n.dim
    shape = "cocycle must be a %d x %d grid of %d-covectors" % (k, k, k)
    if len(omega) != k or any(len(row) != k for row in omega):
        raise ValidationError(shape)
    om = [[vector(omega[i][j]) for j in range(k)] for i in range(k)]
    if any(len(om[i][j]) != k for i in range(k) for j in range(k)):
        raise ValidationError(shape)
    for i in range(k):
        for j in range(k):
            if any(a + b for a, b in zip(om[i][j], om[j][i])):
                raise ValidationError("cocycle is not antisymmetric at (%d, %d)" % (i, j))
    return om


def _coad(n, i, phi):
    """ad*(e_i) phi = -phi o ad(e_i) as a covector."""
    k = n.dim
    return tuple(-sum((phi[a] * n.constants[i][j][a] for a in range(k)), ZERO)
                 for j in range(k))


def _omega_at(om, u, v):
    k = len(om)
    out = [ZERO] * k
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if b:
                for l, c in enumerate(om[i][j]):
                    out[l] += a * b * c
    return out


def is_coadjoint_cocycle(n, omega):
    """d omega = 0 in C^3(n, n*) for the coadjoint module."""
    om = _check_omega(n, omega)
    k = n.dim
    e = [unit(k, i) for i in range(k)]
    for i, j, l in combinations(range(k), 3):
        t = [ZERO] * k
        for sgn, x, (y, z) in ((1, i, (j, l)), (-1, j, (i, l)), (1, l, (i, j))):
            for q, c in enumerate(_coad(n, x, om[y][z])):
                t[q] += sgn * c
        for sgn, (x, y), z in ((-1, (i, j), l), (1, (i, l), j), (-1, (j, l), i)):
            for q, c in enumerate(_omega_at(om, n.constants[x][y], e[z])):
                t[q] += sgn * c
        if any(t):
            return False
    return True


def coadjoint_extension(n, omega=None, labels=None):
    """The metric algebra t_{n,omega} on n* + n with the neutral pairing."""
    k = n.dim
    if not n.is_two_step():
        raise NotTwoStepBase("base algebra must be nilpotent of class at most two")
    om = _check_omega(n, omega if omega is not None else zero_cocycle(k))
    if not is_coadjoint_cocycle(n, om):
        raise NotACocycle("omega is not a 2-cocycle with values in the coadjoint module")
    m = 2 * k
    c = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i in range(k):
        for a in range(k):
            v = [ZERO] * m
            for j in range(k):
                v[j] = -n.constants[i][j][a]
            c[k + i][a] = v
            c[a][k + i] = [-x for x in v]
        for j in range(k):
            c[k + i][k + j] = list(om[i][j]) + list(n.constants[i][j])
    if labels is None:
        base = n.labels
        labels = ["%s*" % s for s in base] + list(base)
    try:
        g = LieAlgebra(c, labels)
    except ValidationError as exc:
        raise InvariantError("coadjoint extension fails Jacobi: %s" % exc) from exc
    return MetricLieAlgebra(g, neutral_gram(k))


# k x k grid of k-covectors omega[i][j], antisymmetric in (i, j)
CoadjointCocycle = list
# F[i][j][l] = omega(e_i, e_j)(e_l)
ThreeTensor = list


def three_tensor(omega):
    """F(u, v, w) = omega(u, v)(w) on basis triples."""
    k = len(omega)
    return [[[vector(omega[i][j])[l] for l in range(k)] for j in range(k)] for i in range(k)]


def check_F_conditions(n, omega):
    om = _check_omega(n, omega)
    k = n.dim
    F = three_tensor(om)
    alternating = True
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if F[i][j][l] != -F[i][l][j] or F[i][j][l] != -F[j][i][l]:
                    alternating = False
    two_step = True
    for u in range(k):
        for v in range(k):
            for w in range(k):
                for z in range(k):
                    lhs = sum((c * F[u][q][z] for q, c in enumerate(n.constants[v][w]) if c), ZERO)
                    rhs = sum((c * F[v][w][q] for q, c in enumerate(n.constants[u][z]) if c), ZERO)
                    if lhs != rhs:
                        two_step = False
    return {"alternating": alternating, "two_step": two_step}


def direct_sum(M1, M2):
    """Orthogonal direct product of metric Lie algebras."""
    a, b = M1.dim, M2.dim
    m = a + b
    c = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i in range(a):
        for j in range(a):
            c[i][j][:a] = M1.g.constants[i][j]
    for i in range(b):
        for j in range(b):
            c[a + i][a + j][a:] = M2.g.constants[i][j]
    g = LieAlgebra(c, list(M1.g.labels) + list(M2.g.labels))
    gram = Matrix.block([[M1.gram, Matrix.zeros(a, b)], [Matrix.zeros(b, a), M2.gram]])
    return MetricLieAlgebra(g, gram)


# ---------------------------------------------------------------------------
# structure of flat biinvariant algebras


@dataclass
class Decomposition:
    z: list
    a: list
    dual: list
    omega: list
    F: list
    extension: MetricLieAlgebra
    isomorphism: Matrix


def structure_decomposition(M):
    """Split M as z + t_{a,omega} with z central nondegenerate and a abelian."""
    if not is_flat_biinvariant(M):
        raise NotFlatBiinvariant("metric algebra is not flat biinvariant")
    g, G = M.g, M.gram
    m = g.dim
    D = g.derived_algebra()
    Z = g.center()
    z = complement_basis(D, m, Z)
    # W = z-perp contains D and is nondegenerate
    W = kernel_basis(Matrix([G @ v for v in z], m)) if z else [unit(m, i) for i in range(m)]
    C = complement_basis(D, m, span_basis(W, m))
    k = len(D)
    if len(C) != k:
        raise InvariantError("complement of [g,g] in z-perp has the wrong dimension")
    if k:
        P = Matrix([[_pair(G, d, c) for c in C] for d in D])
        GC = Matrix([[_pair(G, c, c2) for c2 in C] for c in C])
        # phi(c_i) = sum_l A_il d_l with <phi(c_i), c_j> = -1/2 <c_i, c_j>
        A = (GC * (-HALF)) @ inverse(P)
        a = [tuple(ci + sum((A.rows[i][l] * D[l][t] for l in range(k)), ZERO)
                   for t, ci in enumerate(C[i])) for i in range(k)]
        Pa = Matrix([[_pair(G, d, x) for x in a] for d in D])
        # dual basis of D with <d'_l, a_i> = delta
        Q = inverse(Pa)
        dual = [tuple(sum((Q.rows[l][s] * D[s][t] for s in range(k)), ZERO) for t in range(m))
                for l in range(k)]
    else:
        a, dual = [], []
    om = [[tuple(_pair(G, g.bracket(a[i], a[j]), a[l]) for l in range(k))
           for j in range(k)] for i in range(k)]
    ext = coadjoint_extension(LieAlgebra.abelian(k, ["a%d" % (i + 1) for i in range(k)]), om)
    iso = Matrix.from_columns(list(z) + dual + a, m)
    target = ext
    if z:
        Gz = Matrix([[_pair(G, u, v) for v in z] for u in z])
        target = direct_sum(MetricLieAlgebra(LieAlgebra.abelian(len(z), ["z%d" % (i + 1) for i in range(len(z))]), Gz), ext)
    if not _is_isometric_iso(iso, target, M):
        raise InvariantError("reconstructed coadjoint extension is not isometric")
    return Decomposition(list(z), a, dual, om, three_tensor(om) if k else [], ext, iso)


def _is_isometric_iso(P, src, dst):
    """P maps src coordinates to dst coordinates, preserving bracket and form."""
    if P.T @ dst.gram @ P != src.gram:
        return False
    m = src.dim
    cols = P.columns()
    for i in range(m):
        for j in range(i + 1, m):
            lhs = dst.g.bracket(cols[i], cols[j])
            rhs = P @ src.g.constants[i][j]
            if tuple(lhs) != tuple(rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# dual tube


def tube_forms(n):
    """(k, omega, J) on R^n + (R^n)*: neutral metric, symplectic form, para-complex J."""
    I, Z = Matrix.identity(n), Matrix.zeros(n, n)
    K = Matrix.block([[Z, I], [I, Z]])
    W = Matrix.block([[Z, -I], [I, Z]])
    J = Matrix.block([[-I, Z], [Z, I]])
    if J @ J != Matrix.identity(2 * n) or J.T @ W != K:
        raise InvariantError("tube forms are inconsistent")
    return K, W, J


def _aff_matrix(L, t):
    n = L.nrows
    rows = [list(L.rows[a]) + [t[a]] for a in range(n)]
    rows.append([ZERO] * n + [ONE])
    return Matrix(rows)


def dual_tube_element(A):
    """Group element (u, lam) -> (A u, l(A)^-T lam) on A^{2n}."""
    A = A if isinstance(A, Matrix) else Matrix(A)
    n = A.nrows - 1
    L = A.submatrix(range(n), range(n))
    t = [A.rows[k][n] for k in range(n)]
    Lh = Matrix.block([[L, Matrix.zeros(n, n)], [Matrix.zeros(n, n), inverse(L).T]])
    return _aff_matrix(Lh, t + [ZERO] * n)


def _aff_lie(L, t):
    n = L.nrows
    rows = [list(L.rows[a]) + [t[a]] for a in range(n)]
    rows.append([ZERO] * (n + 1))
    return Matrix(rows)


def dual_tube_realization(r):
    """Realization of g + (R^n)* on A^{2n} and the forms (k, omega, J)."""
    n = r.n
    Z = Matrix.zeros(n, n)
    mats = []
    for i in range(r.m):
        L = r.linear_part(i)
        mats.append(_aff_lie(Matrix.block([[L, Z], [Z, -L.T]]), list(r.translation(i)) + [ZERO] * n))
    for a in range(n):
        mats.append(_aff_lie(Matrix.zeros(2 * n, 2 * n), unit(2 * n, n + a)))
    labels = list(r.algebra.labels) + ["p%d" % (a + 1) for a in range(n)]
    tube = realization_from_matrices(2 * n, mats, labels)
    return tube, tube_forms(n)


# ---------------------------------------------------------------------------
# affinization


def half_bracket_table(g):
    return [[tuple(c * HALF for c in g.constants[i][j]) for j in range(g.dim)]
            for i in range(g.dim)]


def affinization(g, table=None):
    """Etale realization X -> (L_X, X) of a left-symmetric product on g."""
    from .prehomog import is_left_symmetric
    if isinstance(g, MetricLieAlgebra):
        g = g.g
    m = g.dim
    if table is None:
        if not g.is_two_step():
            raise NotTwoStep("half-bracket product needs a two-step nilpotent algebra")
        table = half_bracket_table(g)
    else:
        table = [[vector(table[i][j]) for j in range(m)] for i in range(m)]
        if not is_left_symmetric(table):
            raise NotLeftSymmetric("product table is not left-symmetric")
        for i in range(m):
            for j in range(m):
                if tuple(a - b for a, b in zip(table[i][j], table[j][i])) != g.constants[i][j]:
                    raise ValidationError("product commutator does not match the bracket")
    mats = [_aff_lie(Matrix.from_columns([table[i][j] for j in range(m)], m), unit(m, i))
            for i in range(m)]
    r = realization_from_matrices(m, mats, g.labels)
    if r.algebra.constants != g.constants:
        raise InvariantError("affinization changed the structure constants")
    return r
