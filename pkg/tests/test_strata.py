import itertools
from math import comb

import pytest

from k3walls.strata import (
    III_FAMILIES,
    Family,
    RnSpace,
    compositions,
    count_strata,
    enumerate_strata,
    iter_strata,
    max_intermediate_components,
    single_component_ranges,
    surface_type_catalog,
    two_component_ranges,
    type2_strata,
)


def test_type2_strata():
    strata = type2_strata()
    assert [d.family for d in strata] == [Family.II, Family.II_INF]
    assert all(d.dim == 17 == d.factor_dim for d in strata)
    assert any("swap" in note for note in strata[0].annotations)


def test_iii0_smallest_slice():
    strata = enumerate_strata([Family.III0], r=1, s=1)
    assert [(d.n, d.parts) for d in strata] == [(1, (1,)), (2, (0, 0))]
    assert [d.dim for d in strata] == [17, 16]
    assert len(strata) == count_strata(Family.III0, r=1, s=1)


def test_rn_components():
    assert [RnSpace(n).components for n in range(10)] == [1] * 8 + [2, 1]
    with pytest.raises(ValueError):
        RnSpace(10)


def test_compositions_count():
    for total in range(6):
        for parts in range(1, 5):
            got = list(compositions(total, parts))
            assert len(got) == len(set(got)) == comb(total + parts - 1, parts - 1)
            assert all(sum(c) == total and min(c) >= 0 for c in got)


@pytest.mark.parametrize("family", III_FAMILIES)
def test_counts_match_per_slice(family):
    for r, s in itertools.product(range(0, 18), repeat=2):
        n = sum(1 for _ in iter_strata([family], r=r, s=s))
        assert n == count_strata(family, r=r, s=s)


def test_dim_filter_and_bounds():
    for d in iter_strata([Family.III2], dim=10):
        assert d.dim == 10
    limit = max_intermediate_components()
    assert limit == 18 and max_intermediate_components(True, True) == 16
    assert all(d.n <= limit and d.dim >= 0 for d in iter_strata([Family.III0]))


def test_canonicalize_keeps_one_of_each_swap():
    full = enumerate_strata([Family.III0], r=2, s=3) + enumerate_strata([Family.III0], r=3, s=2)
    canon = enumerate_strata([Family.III0], r=2, s=3, canonicalize=True) + enumerate_strata(
        [Family.III0], r=3, s=2, canonicalize=True
    )
    assert len(canon) * 2 == len(full)


def test_nomid_families_have_no_middle():
    for fam in (Family.III1_NOMID, Family.III2_NOMID):
        strata = enumerate_strata([fam])
        assert strata and all(d.n == 0 and d.parts == () for d in strata)


def test_marking_ranges_match_the_classification():
    assert single_component_ranges() == {"a": (4, 16), "b": (3, 17), "c": (2, 18), "d": (8, 18), "e": (13, 19)}
    assert two_component_ranges() == {3: ((7, 10),), 4: ((1, 9),) * 2, 5: ((2, 8),) * 2, 6: ((2, 8), (1, 9))}
    catalog = {lab.label: lab.n0_range for lab in surface_type_catalog()}
    assert catalog == {"A": (), "B": ((4, 16),), "C": ((3, 17),), "D": ((2, 18),), "E": (),
                       "F": ((1, 9), (1, 9)), "G": ((2, 8), (2, 8)), "H": ((2, 8), (1, 9))}
