import random
from fractions import Fraction

import pytest

from conftest import random_weierstrass
from k3walls.errors import DegreeError, InconsistentProfileError, MalformedIsotrivialError, ZeroInputError
from k3walls.fibers import (
    II,
    II_STAR,
    III,
    III_STAR,
    IV,
    IV_STAR,
    L,
    NONMINIMAL,
    SMOOTH,
    FiberType,
    I,
    I_star,
    Kind,
    N,
    WeierstrassData,
    classify_all,
    classify_place,
    deg_L_jinfty,
    discriminant,
    disc_total,
    has_lct_zero,
    is_slc,
    k3_jinfty_configurations,
    make_nk_data,
    nk_counts,
    nk_surgery_degL_delta,
)
from k3walls.poly import INFINITE, BinaryForm, power

EULER = {Kind.SMOOTH: 0, Kind.II: 2, Kind.III: 3, Kind.IV: 4, Kind.IV_STAR: 8, Kind.III_STAR: 9, Kind.II_STAR: 10}


def euler(f: FiberType) -> int:
    if f.kind is Kind.I:
        return f.param
    if f.kind is Kind.I_STAR:
        return f.param + 6
    return EULER[f.kind]


def kodaira_oracle(va, vb, vd):
    """Fiber type from the discriminant order and the valuation of j = A^3 / Delta."""
    m = min(3 * va, 2 * vb)
    if m > 12:
        return NONMINIMAL
    if m == 12:
        return L
    vj = 3 * va - vd
    if vj >= 0:
        return {0: SMOOTH, 2: II, 3: III, 4: IV, 6: I_star(0), 8: IV_STAR, 9: III_STAR, 10: II_STAR}[vd]
    if vd == -vj:
        return I(vd)
    assert vd == 6 - vj
    return I_star(vd - 6)


def consistent_profiles(max_v=7, extra=12):
    for va in range(max_v):
        for vb in range(max_v):
            if 3 * va != 2 * vb:
                yield va, vb, min(3 * va, 2 * vb)
            else:
                for vd in range(3 * va, 3 * va + extra):
                    yield va, vb, vd


def test_classification_matches_oracle_on_every_profile():
    count = 0
    for va, vb, vd in consistent_profiles():
        fiber = classify_place((va, vb, vd), False)
        assert fiber == kodaira_oracle(va, vb, vd), (va, vb, vd)
        if fiber not in (L, NONMINIMAL):
            assert euler(fiber) == vd
        count += 1
    assert count > 75


def test_inconsistent_profiles_are_rejected():
    with pytest.raises(InconsistentProfileError):
        classify_place((1, 2, 5), False)  # min(3, 4) = 3 forced
    with pytest.raises(InconsistentProfileError):
        classify_place((2, 3, 5), False)  # cancellation only raises the order
    with pytest.raises(InconsistentProfileError):
        classify_place((2, 3, INFINITE), False)


def test_isotrivial_profiles():
    for k in range(6):
        assert classify_place((2 * k, 3 * k, INFINITE), True) == N(k)
    with pytest.raises(MalformedIsotrivialError):
        classify_place((2, 4, INFINITE), True)
    with pytest.raises(MalformedIsotrivialError):
        classify_place((3, 4, INFINITE), True)


def test_fiber_type_parse_round_trip():
    for f in (SMOOTH, II, III_STAR, L, NONMINIMAL, I(7), I_star(0), N(3)):
        assert FiberType.parse(str(f)) == f
    with pytest.raises(ValueError):
        I(0)


def test_slc_and_lct_flags():
    assert is_slc(N(2)) and not is_slc(N(3)) and not is_slc(NONMINIMAL)
    assert has_lct_zero(N(2)) and has_lct_zero(L) and not has_lct_zero(N(1))


def test_weierstrass_data_validation():
    with pytest.raises(DegreeError):
        WeierstrassData(2, BinaryForm.zero(7), BinaryForm.zero(12))
    with pytest.raises(ZeroInputError):
        WeierstrassData(2, BinaryForm.zero(8), BinaryForm.zero(12))


def test_two_n2_surface():
    w = make_nk_data(2, 2, [0, None])
    reports = classify_all(w)
    assert [r.fiber for r in reports] == [N(2), N(2)]
    assert all(r.lct_zero and r.slc for r in reports)
    assert nk_counts(reports) == {2: 2}


def test_four_n1_surface_has_four_places():
    w = make_nk_data(1, 2, [0, None, 1, 2])
    assert discriminant(w).is_zero()
    reports = classify_all(w)
    assert len(reports) == 4
    assert nk_counts(reports) == {1: 4}
    assert deg_L_jinfty(nk_counts(reports)) == 2


def test_make_nk_data_checks_budget():
    with pytest.raises(DegreeError):
        make_nk_data(1, 2, [0, 1, 2])
    w = make_nk_data([1, 1, 2], 2, [0, 1, None])
    assert nk_counts(classify_all(w)) == {1: 2, 2: 1}


def test_generic_k3_has_24_nodal_fibers():
    rng = random.Random(5)
    w = random_weierstrass(rng, planted=False)
    reports = classify_all(w)
    assert disc_total(reports) == 24
    assert {r.fiber for r in reports} == {I(1)}


def test_planted_i3_star():
    # A = -3 t^2 u^6, B = t^3 (2u^3 + t^3) u^6 gives Delta = 27 t^9 u^12 (4u^3 + t^3)
    t, u = BinaryForm.linear(0), BinaryForm.linear(None)
    a = power(t, 2) * power(u, 6).scale(-3)
    b = power(t, 3) * (power(u, 3).scale(2) + power(t, 3)) * power(u, 6)
    fibers = {str(r.place.form): r for r in classify_all(WeierstrassData(2, a, b))}
    assert fibers["T0"].fiber == I_star(3)
    assert fibers["T0"].place.profile == (2, 3, 9)
    assert fibers["T1"].fiber == L  # vA = vB = 6, min(18, 12) = 12


def test_k3_configurations_and_surgery():
    found = {tuple(sorted(c.items())) for c in k3_jinfty_configurations()}
    assert found == {((1, 4),), ((1, 2), (2, 1)), ((2, 2),)}
    assert nk_surgery_degL_delta() == 1
    assert deg_L_jinfty({3: 1, 1: 1}) - deg_L_jinfty({1: 2}) == nk_surgery_degL_delta()
    assert deg_L_jinfty({1: 2}) == 1
    assert deg_L_jinfty({}) == 0
