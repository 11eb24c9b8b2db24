from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from belyi.exact import (
    INF,
    AlgebraicSet,
    MobiusMap,
    RatPoly,
    format_poly,
    is_squarefree,
    mobius_apply,
    mobius_three_point,
    poly_compose,
    poly_critical_values,
    poly_derivative,
    poly_gcd,
    pushforward_set,
    rational_roots,
    resultant,
    squarefree_part,
    to_ext,
)
from helpers import brute_rational_roots, nonconstant, polys, small_fracs, sylvester_resultant

z = RatPoly.z()


def P(*coeffs):
    return RatPoly(coeffs)


# -- examples ---------------------------------------------------------------


def test_derivative_examples():
    assert poly_derivative(RatPoly.const(5)) == RatPoly()
    assert poly_derivative(P(0, 1, -2, 1)) == P(1, -4, 3)


def test_compose_examples():
    assert poly_compose(z**2, z + 1) == P(1, 2, 1)
    q = P(3, -1, 0, 7)
    assert poly_compose(z, q) == q
    assert poly_compose(z**2 - 2, z**2 - 2) == P(2, 0, -4, 0, 1)


def test_gcd_examples():
    assert poly_gcd(z**2 - 1, z - 1) == z - 1
    assert poly_gcd(z**2 - 2, z**2 - 3) == RatPoly.const(1)
    assert poly_gcd(3 * z**2 - 6, RatPoly()) == z**2 - 2
    with pytest.raises(ValueError):
        poly_gcd(RatPoly(), RatPoly())


def test_squarefree_examples():
    assert squarefree_part((z - 1) ** 2) == z - 1
    assert squarefree_part(z**2 - 2) == z**2 - 2
    assert squarefree_part(z**3 - z**2) == z**2 - z
    with pytest.raises(ValueError):
        squarefree_part(RatPoly())


def test_resultant_examples():
    assert resultant(z - 3, z**2 + 1) == 10
    assert resultant(z**2 - 2, z**2 - 3) == 1
    f = P(1, 4, 0, -2)
    assert resultant(f, f) == 0
    with pytest.raises(ValueError):
        resultant(RatPoly(), RatPoly())


def test_rational_roots_examples():
    assert rational_roots(z**2 - z) == [0, 1]
    assert rational_roots(z**2 - 2) == []
    assert rational_roots(P(1, 0, -3, 2)) == [Fraction(-1, 2), 1]
    with pytest.raises(ValueError):
        rational_roots(RatPoly())


def test_rational_roots_large_coefficients():
    roots = [Fraction(10**30 + 7, 3**40), Fraction(-5, 10**25 + 1), Fraction(2)]
    f = RatPoly.from_roots(roots) * (z**2 + 1)
    assert rational_roots(f) == sorted(roots)


def test_pushforward_examples():
    A = AlgebraicSet(z**2 - 2)
    assert pushforward_set(A, z**2) == ([2], None)
    assert pushforward_set(A, z) == ([], A)
    assert pushforward_set(A, z**2 - 2) == ([0], None)
    with pytest.raises(ValueError):
        pushforward_set(A, RatPoly.const(3))


def test_pushforward_irrational_image():
    # roots of z^3 - 2 under z -> z + 1 are roots of (z-1)^3 - 2
    A = AlgebraicSet(z**3 - 2)
    rats, irr = pushforward_set(A, z + 1)
    assert rats == [] and irr.defining == poly_compose(z**3 - 2, z - 1)


def test_mobius_apply_examples():
    assert mobius_apply(MobiusMap(1, -2, 0, 1), Fraction(2)) == 0
    assert mobius_apply(MobiusMap(0, 1, 1, 0), Fraction(0)) is INF
    assert mobius_apply(MobiusMap(1, 0, 1, -3), INF) == 1
    assert mobius_apply(MobiusMap(1, 5, 0, 2), INF) is INF


def test_mobius_three_point_examples():
    assert mobius_three_point(0, 1, INF).is_identity()
    m = mobius_three_point(2, 3, INF)
    assert m(Fraction(7)) == 5 and m(INF) is INF
    m = mobius_three_point(0, 1, 2)
    assert [m(Fraction(x)) for x in (0, 1)] == [0, 1] and m(Fraction(2)) is INF
    with pytest.raises(ValueError):
        mobius_three_point(1, 1, INF)
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)


def test_critical_values_examples():
    assert poly_critical_values(z**2) == ([0], None, True)
    assert poly_critical_values(z**3 - 3 * z) == ([-2, 2], None, True)
    assert poly_critical_values(z**2 - 2) == ([-2], None, True)
    assert poly_critical_values(3 * z + 1) == ([], None, False)
    with pytest.raises(ValueError):
        poly_critical_values(RatPoly.const(1))


def test_critical_values_irrational():
    # z^3 - 6z: critical points +-sqrt 2, values -+4 sqrt 2, a set cut out by y^2 - 32
    rats, irr, has_inf = poly_critical_values(z**3 - 6 * z)
    assert rats == [] and has_inf
    assert irr.defining == z**2 - 32


def test_algebraic_set_rejects_bad_input():
    for bad in (z - 1, 2 * z**2 - 4, (z**2 - 2) ** 2, z**2 - 1):
        with pytest.raises(ValueError):
            AlgebraicSet(bad)


def test_formatting():
    assert format_poly(P(0, Fraction(27, 4), Fraction(-27, 2), Fraction(27, 4))) == "27/4*z^3 - 27/2*z^2 + 27/4*z"
    assert format_poly(RatPoly()) == "0"
    assert to_ext("oo") is INF and to_ext("-3/6") == Fraction(-1, 2)


# -- oracles ----------------------------------------------------------------


@given(nonconstant(5), nonconstant(5))
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)


@given(polys(min_degree=1, max_degree=5, coeffs=st.integers(-30, 30)))
def test_rational_roots_match_divisor_search(f):
    assert rational_roots(f) == brute_rational_roots(f)


@given(st.lists(small_fracs, min_size=1, max_size=4), polys(max_degree=3))
def test_rational_roots_recover_planted(roots, cofactor):
    assume(cofactor != RatPoly())
    f = RatPoly.from_roots(roots) * cofactor
    found = rational_roots(f)
    assert set(roots) <= set(found)
    assert all(f(r) == 0 for r in found)
    assert found == sorted(set(found))


# -- properties -------------------------------------------------------------


@given(nonconstant(3), nonconstant(3), nonconstant(3))
def test_resultant_multiplicative(f, g, h):
    assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


@given(small_fracs, polys(max_degree=5))
def test_resultant_evaluation_law(a, g):
    assume(g != RatPoly())
    assert resultant(z - a, g) == g(a)


@given(polys(min_degree=1, max_degree=6))
def test_squarefree_idempotent(f):
    s = squarefree_part(f)
    assert is_squarefree(s)
    assert squarefree_part(s) == s
    assert poly_gcd(s, f) == s
    assert f.monic().divides(s ** f.degree)


@given(nonconstant(3), nonconstant(3))
def test_compose_degree_law(g, f):
    assert poly_compose(g, f).degree == g.degree * f.degree


@given(nonconstant(3), nonconstant(3), small_fracs)
def test_compose_evaluates(g, f, x):
    assert poly_compose(g, f)(x) == g(f(x))


def ext_points():
    return st.one_of(small_fracs, st.just(INF))


@st.composite
def mobius_maps(draw):
    a, b, c, d = (draw(small_fracs) for _ in range(4))
    assume(a * d - b * c != 0)
    return MobiusMap(a, b, c, d)


@given(st.lists(ext_points(), min_size=3, max_size=3, unique_by=lambda p: (p is INF, p)))
def test_three_point_round_trip(pts):
    m = mobius_three_point(*pts)
    assert m(pts[0]) == 0 and m(pts[1]) == 1 and m(pts[2]) is INF


@given(mobius_maps(), mobius_maps(), ext_points())
def test_mobius_composition_law(f, g, x):
    assert f.compose(g)(x) == f(g(x))
    assert f.inverse()(f(x)) == x


@given(polys(min_degree=2, max_degree=4), nonconstant(3))
@settings(max_examples=60)
def test_pushforward_degree_bound_and_invariant(f, p):
    _, A = AlgebraicSet.split(f)
    assume(A is not None)
    rats, irr = pushforward_set(A, p)
    assert len(rats) + (irr.size if irr else 0) <= A.size
    # every image point is a root of Res_x(A(x), y - p(x))
    for r in rats:
        assert resultant(A.defining, p - r) == 0
    if irr is not None:
        AlgebraicSet(irr.defining)  # revalidates the invariant


@given(polys(min_degree=2, max_degree=5))
@settings(max_examples=60)
def test_critical_value_sets_are_valid(p):
    rats, irr, has_inf = poly_critical_values(p)
    assert has_inf
    assert rats == sorted(set(rats))
    if irr is not None:
        AlgebraicSet(irr.defining)
    dp = poly_derivative(p)
    for r in rats:
        # some critical point maps to r
        assert poly_gcd(dp, p - r).degree >= 1


@given(mobius_maps(), polys(min_degree=2, max_degree=3))
@settings(max_examples=60)
def test_mobius_push_set(m, f):
    _, A = AlgebraicSet.split(f)
    assume(A is not None)
    B = m.push_set(A)
    # pulling back through m recovers A
    assert m.inverse().push_set(B) == A
