from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3walls.errors import DivisibilityError, ZeroInputError
from k3walls.poly import (
    INFINITE,
    BinaryForm,
    add,
    content,
    divides,
    exact_div,
    gcd,
    is_squarefree,
    mul,
    multiplicity,
    place_decompose,
    power,
    product,
    rational_roots,
    split_rational,
    squarefree_decompose,
    substitute,
)

coeff = st.integers(-6, 6).map(Fraction)


@st.composite
def forms(draw, max_degree=6, nonzero=True):
    d = draw(st.integers(0, max_degree))
    cs = draw(st.lists(coeff, min_size=d + 1, max_size=d + 1))
    if nonzero and not any(cs):
        cs[draw(st.integers(0, d))] = Fraction(1)
    return BinaryForm.from_coeffs(cs)


roots = st.one_of(st.none(), st.fractions(min_value=-5, max_value=5, max_denominator=4))


def T0():
    return BinaryForm.linear(0)


def T1():
    return BinaryForm.linear(None)


def test_coefficient_convention():
    f = BinaryForm.from_coeffs([1, 2, 3])  # T1^2 + 2 T0 T1 + 3 T0^2
    assert f.evaluate(1, 0) == 3
    assert f.evaluate(0, 1) == 1
    assert BinaryForm.linear(2).evaluate(2, 1) == 0
    assert T1().evaluate(1, 0) == 0


@given(forms(), forms())
def test_mul_commutes_and_adds_degrees(f, g):
    assert mul(f, g) == mul(g, f)
    assert mul(f, g).degree == f.degree + g.degree


@given(forms(), forms())
def test_add_needs_equal_degrees(f, g):
    if f.degree != g.degree:
        with pytest.raises(Exception):
            add(f, g)
    else:
        assert add(f, g) == add(g, f)


@given(forms(), forms())
def test_exact_division_inverts_multiplication(f, g):
    assert exact_div(mul(f, g), g) == f


@given(forms(4), forms(4), forms(3))
def test_gcd_contains_common_factor(f, g, h):
    d = gcd(mul(f, h), mul(g, h))
    assert divides(h, d) or h.is_constant()
    assert divides(d, mul(f, h)) and divides(d, mul(g, h))
    lead = [c for c in d.coeffs if c][-1]
    assert lead == 1


def test_gcd_tracks_infinity():
    f = mul(power(T1(), 2), BinaryForm.linear(1))
    g = mul(T1(), BinaryForm.linear(2))
    assert gcd(f, g) == T1()
    with pytest.raises(ZeroInputError):
        gcd(BinaryForm.zero(2), BinaryForm.zero(3))


def test_exact_div_rejects_non_divisors():
    with pytest.raises(DivisibilityError):
        exact_div(BinaryForm.linear(1), BinaryForm.linear(2))
    with pytest.raises(DivisibilityError):
        exact_div(T0(), T1())


@given(st.lists(st.tuples(roots, st.integers(1, 4)), min_size=1, max_size=4, unique_by=lambda x: x[0]))
def test_multiplicity_and_squarefree_layers(factors):
    f = product(power(BinaryForm.linear(r), m) for r, m in factors).scale(3)
    for r, m in factors:
        assert multiplicity(BinaryForm.linear(r), f) == m
    layers = squarefree_decompose(f)
    assert all(is_squarefree(g) for g, _ in layers)
    assert [m for _, m in layers] == sorted({m for _, m in factors})
    assert content(f, layers) == 3
    for g, m in layers:
        assert g.degree == sum(1 for _, mm in factors if mm == m)


@given(st.lists(st.fractions(min_value=-30, max_value=30, max_denominator=7), min_size=1, max_size=5, unique=True))
@settings(max_examples=60)
def test_rational_roots_recovers_planted_roots(rs):
    # an irreducible quadratic keeps the search honest
    f = product([BinaryForm.linear(r) for r in rs] + [BinaryForm.from_coeffs([2, 0, 1])])
    finite = list(f.coeffs)
    assert sorted(rational_roots(finite)) == sorted(rs)


def test_split_rational_peels_linear_factors():
    quad = BinaryForm.from_coeffs([-2, 0, 1])  # T0^2 - 2 T1^2
    f = product([T1(), BinaryForm.linear(Fraction(1, 3)), quad])
    parts = split_rational(f)
    assert T1() in parts and BinaryForm.linear(Fraction(1, 3)) in parts
    assert quad.normalized() in parts
    assert sum(p.degree for p in parts) == f.degree


@given(forms(5), st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_substitution_is_a_ring_map(f, m):
    a, b, c, d = m
    mat = ((a, b), (c, d))
    g = BinaryForm.linear(1)
    assert substitute(mul(f, g), mat) == mul(substitute(f, mat), substitute(g, mat))


def test_place_decompose_profiles():
    # A = T0^2 (T0^6 + T1^6), B = T0^3 (T0^9 + 5 T1^9): an I0* fiber at T0
    a = mul(power(T0(), 2), BinaryForm.from_coeffs([1, 0, 0, 0, 0, 0, 1]))
    b = mul(power(T0(), 3), BinaryForm.from_coeffs([5] + [0] * 8 + [1]))
    places = {str(p.form): p.profile for p in place_decompose(a, b)}
    assert places["T0"] == (2, 3, 6)
    assert sum(p.degree * p.v_disc for p in place_decompose(a, b)) == 24


def test_place_decompose_isotrivial_splits_rational_points():
    core = product(BinaryForm.linear(r) for r in (0, None, 1, 2))
    a = power(core, 2).scale(Fraction(-1, 3))
    b = power(core, 3).scale(Fraction(2, 27))
    places = place_decompose(a, b)
    assert len(places) == 4
    assert all(p.profile == (2, 3, INFINITE) for p in places)
    with pytest.raises(ZeroInputError):
        place_decompose(BinaryForm.zero(8), BinaryForm.zero(12))
