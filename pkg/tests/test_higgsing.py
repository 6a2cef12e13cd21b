import pytest

from azbrane.errors import (
    DimensionMismatch,
    MalformedInput,
    NonConstantA,
    SolvabilityViolated,
)
from azbrane.services import higgsing as hg
from azbrane.services.exact_linalg import inverse
from azbrane.services.poly_matrix import PolyMatrix
from azbrane.services.polynomials import MultiPoly, UniPoly
from azbrane.services.scalars import gr
from tests.conftest import random_invertible, random_upper_triangular

Z = UniPoly.x("z")
SCALES = ["1", "-1", "2", "-2", "1/2", "-1/2"]
LAMBDAS = ["1", "2", "1/2", "i"]


def solvable_family(u, c):
    """Two constant A with (a1-a4)^2 + 4*a2*a3 = 0: a shifted e12 and a shifted rank-one nilpotent."""
    u, c = gr(u), gr(c)
    return [
        [[c, u], [0, c]],
        [[c + u, -u], [u, c - u]],
    ]


@pytest.mark.parametrize(
    "a, expected",
    [
        ([[1, 0], [0, 0]], False),
        ([[0, 1], [0, 0]], True),
        ([[1, 1], [-1, -1]], True),
        ([[0, 1], [1, 0]], False),
        ([[3, 0], [0, 3]], True),
    ],
)
def test_solvability_check(a, expected):
    assert hg.solvability_check(hg.HiggsProblem.of(a, 1)) is expected


def test_problem_validation():
    with pytest.raises(MalformedInput):
        hg.HiggsProblem.of([[0, 1], [0, 0]], 0)
    with pytest.raises(DimensionMismatch):
        hg.HiggsProblem.of([[0, 0, 0], [0, 0, 0], [0, 0, 0]], 1)


def test_fundamental_solutions_solve_the_equation():
    for u in SCALES:
        for c in SCALES:
            for a in solvable_family(u, c):
                for lam in LAMBDAS:
                    p = hg.HiggsProblem.of(a, lam)
                    for b in hg.fundamental_solutions(p):
                        assert hg.ode_residual(p, b).is_zero(), (a, lam)


def rank_one_family(u, c, shift=0):
    """a1 - a4 = 2u, a2 = u*c, a3 = -u/c."""
    u, c, shift = gr(u), gr(c), gr(shift)
    return [[shift + u, u * c], [-u / c, shift - u]]


def test_closed_forms_over_the_rank_one_family():
    for u in SCALES:
        for c in SCALES:
            for shift in (0, "i"):
                a = rank_one_family(u, c, shift)
                for lam in LAMBDAS:
                    p = hg.HiggsProblem.of(a, lam)
                    assert hg.solvability_check(p), (u, c)
                    closed = hg.closed_form_solutions(p)
                    for b in closed:
                        assert hg.ode_residual(p, b).is_zero(), (u, c, lam)
                    assert hg.fundamental_solutions(p) == closed


def test_closed_forms_fail_for_non_constant_a():
    p = hg.HiggsProblem.of([[0, Z], [0, 0]], 1)
    assert hg.solvability_check(p)
    b1 = hg.closed_form_solutions(p)[0]
    assert b1 == PolyMatrix.of([[1, Z * Z], [0, 0]])
    assert hg.ode_residual(p, b1) == PolyMatrix.of([[0, Z], [0, 0]])


def test_zero_a_gives_matrix_units():
    p = hg.HiggsProblem.of([[0, 0], [0, 0]], 1)
    units = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]
    assert hg.fundamental_solutions(p) == tuple(PolyMatrix.of(u) for u in units)


def test_upper_nilpotent_closed_forms():
    p = hg.HiggsProblem.of([[0, 1], [0, 0]], 1)
    b1, b2, b3, b4 = hg.fundamental_solutions(p)
    assert b1 == PolyMatrix.of([[1, Z], [0, 0]])
    assert b2 == PolyMatrix.of([[0, 1], [0, 0]])
    assert b3 == PolyMatrix.of([[-Z, -(Z * Z)], [1, Z]])
    assert b4 == PolyMatrix.of([[0, -Z], [0, 1]])


def test_solvability_violated():
    with pytest.raises(SolvabilityViolated):
        hg.fundamental_solutions(hg.HiggsProblem.of([[1, 0], [0, 0]], 1))


def test_non_constant_a():
    with pytest.raises(NonConstantA):
        hg.fundamental_solutions(hg.HiggsProblem.of([[0, Z], [0, 0]], 1))


def test_ode_residual_of_z_identity():
    p = hg.HiggsProblem.of([[0, 0], [0, 0]], 1)
    residual = hg.ode_residual(p, PolyMatrix.of([[Z, 0], [0, Z]]))
    assert residual == PolyMatrix.identity(2)
    p2 = hg.HiggsProblem.of([[0, 0], [0, 0]], 2)
    assert hg.ode_residual(p2, PolyMatrix.of([[Z, 0], [0, Z]])) == PolyMatrix.scalar(2, 2)


def test_solve_rejects_short_bhat():
    with pytest.raises(DimensionMismatch):
        hg.solve(hg.HiggsProblem.of([[0, 1], [0, 0]], 1), [1, 0, 0])


def test_random_deformations(rng):
    for _ in range(200):
        a = rng.choice(solvable_family(rng.choice(SCALES), rng.choice(SCALES)))
        p = hg.HiggsProblem.of(a, rng.choice(LAMBDAS))
        g = random_invertible(rng, 2)
        t = random_upper_triangular(rng, 2)
        b0 = g * t * inverse(g)
        s = hg.solve(p, [b0[0, 0], b0[0, 1], b0[1, 0], b0[1, 1]])
        assert s.b.coefficient_matrix(0) == b0
        assert hg.ode_residual(p, s.b).is_zero()

        report = hg.classify_deformation(p, s)
        assert report.char_poly_matches
        eigenvalues = sorted({t[0, 0], t[1, 1]}, key=lambda c: c.sort_key())
        assert list(report.eigenvalues) == eigenvalues
        if len(eigenvalues) == 2:
            assert report.case == "a"
            assert report.kernel_ideal == UniPoly.from_roots(eigenvalues, "v")
        else:
            assert report.case == "b"
        for component in report.components:
            for z in (0, 1, 2):
                m = s.b.evaluate((z,)).shift(component.eigenvalue)
                assert all(x.is_zero() for x in m.apply([k(z) for k in component.kernel]))


def test_classify_upper_nilpotent():
    p = hg.HiggsProblem.of([[0, 1], [0, 0]], 1)
    report = hg.classify_deformation(p, hg.solve(p, [1, 0, 0, 0]))
    assert report.case == "a"
    assert report.eigenvalues == (gr(0), gr(1))
    assert report.kernel_ideal == UniPoly.of([0, -1, 1], "v")
    assert report.components[0].kernel == (Z, UniPoly.constant(-1))
    assert report.components[1].kernel == (UniPoly.constant(1), UniPoly.zero())


@pytest.mark.parametrize(
    "bhat, scalar, filtered, ideal",
    [
        ([2, 0, 0, 2], True, False, [-2, 1]),
        ([0, 1, 0, 0], False, True, [0, 0, 1]),
    ],
)
def test_classify_double_eigenvalue(bhat, scalar, filtered, ideal):
    p = hg.HiggsProblem.of([[0, 1], [0, 0]], 1)
    report = hg.classify_deformation(p, hg.solve(p, bhat))
    assert report.case == "b"
    assert report.scalar is scalar
    assert report.filtered is filtered
    assert report.kernel_ideal == UniPoly.of(ideal, "v")


def test_spectral_curve_companion():
    phi = PolyMatrix.of([[0, 1], [Z, 0]])
    variables = ("z", "lambda")
    lam = MultiPoly.variable("lambda", variables)
    assert hg.spectral_curve(phi) == lam ** 2 - MultiPoly.variable("z", variables)
    assert hg.spectral_containment(phi, [4]) == [gr(-2), gr(2)]


def test_spectral_curve_diagonal():
    phi = PolyMatrix.of([[Z, 0], [0, Z * 2]])
    variables = ("z", "lambda")
    lam, z = MultiPoly.variable("lambda", variables), MultiPoly.variable("z", variables)
    assert hg.spectral_curve(phi) == (lam - z) * (lam - z * 2)
    assert hg.spectral_containment(phi, [1]) == [gr(1), gr(2)]


def test_spectral_curve_rejects_lambda_variable():
    with pytest.raises(MalformedInput):
        hg.spectral_curve(PolyMatrix.of([[1]], ("lambda",)))


@pytest.mark.parametrize("cap", range(2, 17))
def test_weyl_commutator(cap):
    assert hg.weyl_commutator_check(hg.WeylTrunc(cap))
    assert hg.weyl_commutator_check(hg.WeylTrunc(cap, rank=2))


def test_weyl_action():
    w = hg.WeylTrunc(5)
    assert w.act(w.d_operator(), [UniPoly.of([0, 0, 0, 1])]) == (UniPoly.of([0, 0, 3]),)
    assert w.act(w.z_operator(), [UniPoly.of([1, 1])]) == (UniPoly.of([0, 1, 1]),)
    with pytest.raises(MalformedInput):
        w.encode([UniPoly.of([0, 0, 0, 0, 0, 1])])
    with pytest.raises(MalformedInput):
        hg.WeylTrunc(1)


def test_weyl_top_degree_is_truncated():
    w = hg.WeylTrunc(3)
    assert w.act(w.z_operator(), [UniPoly.of([0, 0, 1])]) == (UniPoly.zero(),)
