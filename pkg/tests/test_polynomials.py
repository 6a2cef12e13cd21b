import pytest

from azbrane.errors import MalformedInput, SpectrumNotSplit
from azbrane.services.poly_matrix import PolyMatrix
from azbrane.services.polynomials import MultiPoly, UniPoly, monomials, split_roots, try_split_roots
from azbrane.services.scalars import gr


def test_unipoly_arithmetic():
    p = UniPoly.of([1, 1])
    q = UniPoly.of([-1, 1])
    assert p * q == UniPoly.of([-1, 0, 1])
    assert (p * q) // q == p
    assert ((p * q) % q).is_zero()
    assert p.gcd(p * q) == p
    assert UniPoly.of([0, 0, 3]).derivative() == UniPoly.of([0, 6])


def test_split_roots_over_gaussian_rationals():
    p = UniPoly.from_roots(["i", "-i", "1/2", "1/2", 0])
    assert split_roots(p) == [(gr("-i"), 1), (gr(0), 1), (gr("i"), 1), (gr("1/2"), 2)]


def test_split_roots_multiplicities_sum_to_degree(rng):
    for _ in range(30):
        roots = [rng.choice(["0", "1", "-2", "i", "1+i", "1/3"]) for _ in range(rng.randint(1, 5))]
        p = UniPoly.from_roots(roots).scale(gr(rng.choice(["2", "-3", "i"])))
        found = split_roots(p)
        assert sum(m for _, m in found) == p.degree
        assert sorted(str(r) for r, m in found for _ in range(m)) == sorted(str(gr(r)) for r in roots)


def test_irreducible_quadratic_is_not_split():
    with pytest.raises(SpectrumNotSplit):
        split_roots(UniPoly.of([-2, 0, 1]))
    assert try_split_roots(UniPoly.of([-2, 0, 1])) is None
    assert try_split_roots(UniPoly.of([1, 0, 1])) == [(gr("-i"), 1), (gr("i"), 1)]


def test_split_roots_with_large_prime_roots():
    assert split_roots(UniPoly.of([-1000000007, 1])) == [(gr(1000000007), 1)]
    p = UniPoly.from_roots([1000000007, 3, "i", 3, "-999999937i"])
    assert split_roots(p) == [
        (gr("-999999937i"), 1), (gr("i"), 1), (gr(3), 2), (gr(1000000007), 1),
    ]


def test_zero_polynomial_has_no_roots():
    with pytest.raises(MalformedInput):
        split_roots(UniPoly.zero())
    assert split_roots(UniPoly.constant(5)) == []


def test_monomials_are_graded_lex():
    assert monomials(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert len(monomials(3, 2)) == 10


def test_multipoly_leading_term_and_evaluation():
    f = MultiPoly.from_dict(("x", "y"), {(1, 0): 1, (0, 2): 3, (0, 0): -1})
    assert f.leading_term() == ((0, 2), gr(3))
    assert f([2, 1]) == 4
    assert f.derivative("y") == MultiPoly.from_dict(("x", "y"), {(0, 1): 6})
    assert f.substitute("x", 1) == MultiPoly.from_dict(("x", "y"), {(0, 2): 3})


def test_multipoly_unipoly_round_trip():
    p = UniPoly.of([1, 0, -2])
    assert MultiPoly.from_unipoly(p).to_unipoly() == p


def test_evaluate_in_matrices():
    z = MultiPoly.variable("z", ("z",))
    m = PolyMatrix.of([[0, 1], [0, 0]])
    assert (z * z).evaluate_in([m], PolyMatrix.identity(2)).is_zero()


def test_polymatrix_determinant_and_char_poly():
    z = MultiPoly.variable("z", ("z",))
    phi = PolyMatrix.of([[0, 1], [z, 0]])
    assert phi.det() == -z
    c0, c1, c2 = phi.char_poly_coefficients()
    assert (c0, c1, c2) == (-z, MultiPoly.zero(("z",)), MultiPoly.constant(1, ("z",)))


def test_polymatrix_derivative_and_evaluate():
    z = MultiPoly.variable("z", ("z",))
    m = PolyMatrix.of([[z * z, 1], [0, z]])
    assert m.derivative() == PolyMatrix.of([[z.scale(2), 0], [0, 1]])
    assert m.evaluate([3]).to_json() == [[9, 1], [0, 3]]
