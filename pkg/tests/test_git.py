import random

import pytest

from conftest import FIXTURES, random_form, random_weierstrass
from k3walls.errors import DegreeError
from k3walls.fibers import WeierstrassData, make_nk_data
from k3walls.git import (
    BoundaryClass,
    MarkedTriple,
    Status,
    candidate_places,
    classify_git_boundary,
    destabilizes,
    hm_oracle,
    marked_stability,
    miranda_minimal,
    slc_marked_stability,
)
from k3walls.io import load
from k3walls.poly import BinaryForm, power

T0 = BinaryForm.linear(0)
T1 = BinaryForm.linear(None)


def mono(i, j):
    return BinaryForm.monomial(i, j)


def test_first_condition_example():
    t = MarkedTriple(WeierstrassData(2, mono(5, 3), mono(7, 5)), T1)
    v = marked_stability(t)
    assert v.status is Status.UNSTABLE
    assert v.witness.place.form == T0
    assert v.witness.place.v_a == 5 and v.witness.place.v_b == 7
    assert hm_oracle(t).status is Status.UNSTABLE


def test_second_condition_needs_the_marker():
    w = WeierstrassData(2, mono(4, 4), mono(6, 6))
    marked = marked_stability(MarkedTriple(w, T0))
    assert marked.status is Status.UNSTABLE and marked.witness.v_l == 1
    # with the marker elsewhere the boundary orders (4, 6) are not enough
    assert marked_stability(MarkedTriple(w, BinaryForm.linear(1))).stable
    for l in (T0, BinaryForm.linear(1)):
        t = MarkedTriple(w, l)
        assert hm_oracle(t).status is marked_stability(t).status


def test_generic_triple_is_stable():
    a = BinaryForm.from_coeffs([1] + [0] * 7 + [1])
    b = BinaryForm.from_coeffs([1] + [0] * 11 + [1])
    t = MarkedTriple(WeierstrassData(2, a, b), T0)
    assert marked_stability(t).stable and hm_oracle(t).stable


def test_strict_statement_gives_the_same_locus():
    for va in range(0, 9):
        for vb in range(0, 13):
            for vl in (0, 1):
                assert destabilizes(va, vb, vl, 2) == destabilizes(va, vb, vl, 2, strict_statement=True)


def test_marker_root_is_a_candidate_even_off_the_discriminant():
    rng = random.Random(2)
    w = random_weierstrass(rng, planted=False)
    marker = BinaryForm.linear(7)
    cands = candidate_places(MarkedTriple(w, marker))
    hits = [(p, vl) for p, vl in cands if p.form == marker]
    assert len(hits) == 1
    place, vl = hits[0]
    assert vl == 1 and place.v_disc == 0
    assert marked_stability(MarkedTriple(w, marker)).stable


def test_opposite_subgroup_mirrors_the_verdict():
    rng = random.Random(7)
    for _ in range(40):
        w = random_weierstrass(rng)
        l = random_form(rng, 1)
        if l.is_zero():
            continue
        t = MarkedTriple(w, l)
        assert hm_oracle(t, e=1).status is hm_oracle(t, e=-1).status


def test_marker_must_be_linear():
    w = WeierstrassData(2, mono(4, 4), mono(6, 6))
    with pytest.raises(DegreeError):
        MarkedTriple(w, BinaryForm.from_coeffs([1, 0, 1]))


def test_slc_path_agrees_on_k3_examples():
    rng = random.Random(8)
    for _ in range(60):
        w = random_weierstrass(rng)
        l = random_form(rng, 1)
        if l.is_zero():
            continue
        t = MarkedTriple(w, l)
        assert (slc_marked_stability(t) is Status.STABLE) == marked_stability(t).stable
    t = load(FIXTURES / "unstable_triple.json")["payload"]
    assert slc_marked_stability(t) is Status.UNSTABLE


def test_miranda_minimal():
    assert miranda_minimal(WeierstrassData(2, mono(8, 0) + mono(0, 8), mono(12, 0) + mono(0, 12)))
    assert not miranda_minimal(WeierstrassData(2, mono(4, 4), mono(6, 6)))
    assert miranda_minimal(make_nk_data(1, 2, [0, None, 1, 2]))


def test_boundary_classes():
    assert classify_git_boundary(make_nk_data(2, 2, [0, None])) is BoundaryClass.POLYSTABLE_CORNER
    assert classify_git_boundary(make_nk_data(1, 2, [0, None, 1, 2])) is BoundaryClass.SLC_JINF
    rng = random.Random(9)
    assert classify_git_boundary(random_weierstrass(rng, planted=False)) is BoundaryClass.INTERIOR_ADE
    l_locus = WeierstrassData(2, power(T0, 4) * (power(T1, 4) + power(T0, 4)), power(T0, 6) * power(T1, 6).scale(3))
    assert classify_git_boundary(l_locus) is BoundaryClass.L_LOCUS
    assert classify_git_boundary(WeierstrassData(2, mono(5, 3), mono(7, 5))) is BoundaryClass.UNSTABLE
