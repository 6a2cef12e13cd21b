import pytest

from azbrane.errors import DimensionMismatch, NonCommutingImages
from azbrane.services import kahler_forms as kf
from azbrane.services.poly_matrix import PolyMatrix
from azbrane.services.polynomials import MultiPoly

Z1 = ("z",)
Z2 = ("z1", "z2")


def random_poly(rng, variables):
    terms = {}
    for _ in range(3):
        exps = tuple(rng.randint(0, 2) for _ in variables)
        terms[exps] = rng.randint(-2, 2)
    return MultiPoly.from_dict(variables, terms)


def random_poly_matrix(rng, r, variables):
    return PolyMatrix.of([[random_poly(rng, variables) for _ in range(r)] for _ in range(r)], variables)


def polynomial_in(rng, m):
    one = PolyMatrix.identity(m.rank, m.variables)
    return one.scale(rng.randint(-2, 2)) + m.scale(rng.randint(-2, 2)) + (m * m).scale(rng.randint(-2, 2))


def commuting_images(rng, r, variables):
    """Two polynomials in one random matrix."""
    m = random_poly_matrix(rng, r, variables)
    return polynomial_in(rng, m), polynomial_in(rng, m)


def const(c, variables=Z1):
    return MultiPoly.constant(c, variables)


def test_trace_of_identity_coordinate():
    z = MultiPoly.variable("z", Z1)
    w = kf.trace_form(kf.d(PolyMatrix.scalar(2, z)))
    assert w.coefficients == (((0,), const(2)),)


def test_trace_of_diagonal_polynomials():
    z = MultiPoly.variable("z", Z1)
    w = kf.trace_form(kf.d(PolyMatrix.of([[z ** 2, 0], [0, z]])))
    assert w.coefficient(0) == z.scale(2) + 1


def test_trace_of_constant_is_zero():
    assert kf.trace_form(kf.d(PolyMatrix.of([[1, 2], [3, 4]]))).is_zero()


def test_trace_is_linear(rng):
    for _ in range(100):
        r = rng.randint(1, 3)
        a, b = random_poly_matrix(rng, r, Z2), random_poly_matrix(rng, r, Z2)
        assert kf.trace_form(kf.d(a) + kf.d(b)) == kf.trace_form(kf.d(a + b))
        assert kf.trace_form(kf.d(a).scale(3)) == kf.trace_form(kf.d(a)).scale(3)


def test_trace_respects_leibniz(rng):
    for _ in range(100):
        r, variables = rng.randint(1, 3), rng.choice([Z1, Z2])
        m, mp = random_poly_matrix(rng, r, variables), random_poly_matrix(rng, r, variables)
        assert kf.trace_form(kf.d(m * mp)) == kf.trace_form(kf.leibniz_expand(m, mp))


def test_trace_respects_pass_over(rng):
    for _ in range(100):
        r, variables = rng.randint(1, 3), rng.choice([Z1, Z2])
        a, b = commuting_images(rng, r, variables)
        assert a * b == b * a
        m = random_poly_matrix(rng, r, variables)
        lhs = kf.d(m).left_mul(a).right_mul(b)
        assert kf.trace_form(lhs) == kf.trace_form(kf.d(m).right_mul(b * a))
        assert kf.trace_form(lhs) == kf.trace_form(kf.d(m).right_mul(a * b))


def test_syntactic_equality():
    z = MultiPoly.variable("z", Z1)
    a, b = PolyMatrix.scalar(2, z), PolyMatrix.of([[0, 1], [0, 0]])
    assert (kf.d(a) + kf.d(b)).syntactically_equal(kf.d(b) + kf.d(a))
    assert kf.d(PolyMatrix.zeros(2)).syntactically_equal(kf.FormalOneForm.zero(2, Z1))
    assert not kf.d(a).syntactically_equal(kf.d(b))


def test_form_shape_validation():
    one = PolyMatrix.identity(2)
    with pytest.raises(DimensionMismatch):
        kf.FormalOneForm(2, Z1, 1, (kf.FormTerm((one,), (one,)),))
    with pytest.raises(DimensionMismatch):
        kf.d(one) + kf.d(PolyMatrix.identity(3))
    with pytest.raises(DimensionMismatch):
        kf.tensor([])


def test_tensor_examples():
    z1, z2 = MultiPoly.variable("z1", Z2), MultiPoly.variable("z2", Z2)
    w = kf.tensor([kf.d(PolyMatrix.scalar(2, z1)), kf.d(PolyMatrix.scalar(2, z2))])
    assert w.degree == 2
    trace = kf.trace_form(w)
    assert trace.coefficients == (((0, 1), const(2, Z2)),)

    z = MultiPoly.variable("z", Z1)
    cube = kf.trace_form(kf.tensor([kf.d(PolyMatrix.scalar(3, z))] * 3))
    assert cube.coefficient(0, 0, 0) == const(3)


def test_non_commuting_images():
    with pytest.raises(NonCommutingImages):
        kf.MorphismToAffine(("y1", "y2"), (PolyMatrix.of([[0, 1], [0, 0]]), PolyMatrix.of([[0, 0], [1, 0]])))
    with pytest.raises(DimensionMismatch):
        kf.MorphismToAffine(("y1", "y2"), (PolyMatrix.identity(2),))


def test_pullback_of_square():
    y = MultiPoly.variable("y", ("y",))
    z = MultiPoly.variable("z", Z1)
    phi = kf.MorphismToAffine(("y",), (PolyMatrix.scalar(2, z),))
    assert kf.pullback(phi, y ** 2) == PolyMatrix.scalar(2, z ** 2)
    w = kf.pullback_form(phi, kf.differential(y ** 2))
    assert (w.degree, len(w.terms)) == (1, 1)
    assert kf.trace_form(w).coefficient(0) == z.scale(4)


def test_pullback_is_multiplicative(rng):
    targets = ("y1", "y2")
    for _ in range(20):
        phi = kf.MorphismToAffine(targets, commuting_images(rng, 2, Z1))
        f, g = random_poly(rng, targets), random_poly(rng, targets)
        assert kf.pullback(phi, f * g) == kf.pullback(phi, f) * kf.pullback(phi, g)
        assert kf.pullback(phi, f + g) == kf.pullback(phi, f) + kf.pullback(phi, g)


def test_pullback_chain_rule_under_trace(rng):
    targets = ("y1", "y2")
    for _ in range(50):
        phi = kf.MorphismToAffine(targets, commuting_images(rng, rng.randint(1, 3), rng.choice([Z1, Z2])))
        f = random_poly(rng, targets)
        pulled = kf.trace_form(kf.pullback_form(phi, kf.differential(f)))
        assert pulled == kf.trace_form(kf.d(kf.pullback(phi, f)))


def test_pullback_form_needs_one_form():
    y = MultiPoly.variable("y", ("y",))
    phi = kf.MorphismToAffine(("y",), (PolyMatrix.identity(2),))
    form = kf.ClassicalForm(("y",), 2, (((0, 0), y),))
    with pytest.raises(DimensionMismatch):
        kf.pullback_form(phi, form)
    assert kf.pullback_tensor(phi, form).degree == 2
