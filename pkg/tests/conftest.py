from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from phg import catalog
from phg.exact import Matrix, kernel_basis
from phg.lie import LieAlgebra, lie_closure, structure_constants_from_matrices

settings.register_profile("phg", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("phg")

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ok = rep.passed
        prev = _CRITERIA.get(num)
        _CRITERIA[num] = (title, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line("criterion %d: %s  %s" % (num, "PASS" if ok else "FAIL", title))


# ---------------------------------------------------------------------------
# random material shared by the property suites


def rand_q(rng, lo=-3, hi=3, den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_upper(rng, size, strict=False, density=0.5):
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + (1 if strict else 0), size):
            if rng.random() < density:
                rows[i][j] = rng.randint(-2, 2)
    return Matrix(rows)


def random_matrix_algebra(rng, max_dim=6):
    """(matrices, LieAlgebra) from the closure of random triangular matrices."""
    while True:
        kind = rng.choice(["upper3", "strict4", "upper3"])
        if kind == "upper3":
            gens = [rand_upper(rng, 3) for _ in range(rng.randint(1, 3))]
        else:
            gens = [rand_upper(rng, 4, strict=True) for _ in range(rng.randint(1, 3))]
        basis = lie_closure(gens)
        if 1 <= len(basis) <= max_dim:
            return basis, LieAlgebra(structure_constants_from_matrices(basis))


def random_unipotent_realization(rng, n):
    """Closure of random strictly upper (n+1)x(n+1) matrices, as aff(n)."""
    from phg.lie import realization_from_matrices
    while True:
        gens = [rand_upper(rng, n + 1, strict=True, density=0.6) for _ in range(rng.randint(1, 3))]
        basis = lie_closure(gens)
        if basis:
            return realization_from_matrices(n, basis)


def random_character(rng, g, basis_matrices=None):
    """One of: zero, trace ad, matrix trace, or a random form killing [g,g]."""
    m = g.dim
    choice = rng.randrange(4)
    if choice == 0:
        return (Fraction(0),) * m
    if choice == 1:
        return g.trace_ad()
    if choice == 2 and basis_matrices is not None:
        return tuple(B.trace() for B in basis_matrices)
    D = g.derived_algebra()
    ann = kernel_basis(Matrix(D, m)) if D else [tuple(1 if i == j else 0 for j in range(m))
                                                   for i in range(m)]
    out = [Fraction(0)] * m
    for v in ann:
        c = rng.randint(-2, 2)
        out = [a + c * b for a, b in zip(out, v)]
    return tuple(out)


def catalog_realizations():
    return [(n, catalog.get(n).build()) for n in catalog.names()
            if catalog.get(n).kind == "affine_realization"]


@pytest.fixture(scope="session")
def realizations():
    return catalog_realizations()


def random_affine_realization(rng, n, max_dim=None):
    """Closure of random upper triangular affine matrices; dim g <= max_dim."""
    from phg.lie import realization_from_matrices
    max_dim = max_dim or n + 2
    while True:
        gens = []
        for _ in range(rng.randint(1, 3)):
            B = rand_upper(rng, n + 1, density=0.5)
            rows = [list(r) for r in B.rows]
            rows[n] = [0] * (n + 1)
            gens.append(Matrix(rows))
        basis = lie_closure(gens)
        if 1 <= len(basis) <= max_dim:
            return realization_from_matrices(n, basis)
