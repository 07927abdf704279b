from fractions import Fraction

import pytest

from k3walls.errors import ProfileError, RangeError
from k3walls.fibers import II, II_STAR, III, III_STAR, IV, IV_STAR, L, SMOOTH, I, I_star, N
from k3walls.walls import (
    Contraction,
    EX2_PAIRING,
    FiberModel,
    WallKind,
    enumerate_walls,
    ex1_wall_function,
    ex2_wall_function,
    fiber_model,
    hassett_base_stable,
    lct,
    lct_table,
    tree_contraction_value,
)

F = Fraction
EPS = F(1, 1000)

EULER = {II: 2, III: 3, IV: 4, II_STAR: 10, III_STAR: 9, IV_STAR: 8}
DUAL = {II: II_STAR, III: III_STAR, IV: IV_STAR, II_STAR: II, III_STAR: III, IV_STAR: IV}


def test_lct_table():
    table = {row.label: row.a0 for row in lct_table()}
    assert table == {"II": F(5, 6), "III": F(3, 4), "IV": F(2, 3), "N(1)": F(1, 2), "II*": F(1, 6),
                     "III*": F(1, 4), "IV*": F(1, 3), "I*(n)": F(1, 2)}
    assert lct(I_star(7)) == F(1, 2)
    assert lct(L) == 0 and lct(N(2)) == 0
    with pytest.raises(ValueError):
        lct(I(2))


def test_tree_walls_recomputed_from_the_formula():
    # lct divided by the number of markings left on the attached rational surface
    for f in EULER:
        assert tree_contraction_value(f) == lct(f) / (12 - EULER[DUAL[f]])
    for k in range(5):
        assert tree_contraction_value(I_star(k)) == F(1, 2 * (6 - k))


def test_wall_list_shape():
    walls = enumerate_walls()
    assert len(walls) == 37
    keys = [w.sort_key() for w in walls]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert enumerate_walls() == walls
    assert all(0 < w.value <= 1 for w in walls)
    assert any(w.value == F(5, 12) and w.kind is WallKind.W_III and str(w.transition) == "ContractFiberTree(II)"
               for w in walls)
    assert any(w.value == F(1, 26) and str(w.transition) == "PseudoelliptFlipThenContract(13)" for w in walls)


def test_walls_above():
    above = enumerate_walls(F(1, 12))
    assert all(w.value > F(1, 12) for w in above)
    assert not any(F(1, 19) <= w.value <= F(1, 13) for w in above)
    # the only wall above 1/2 is the section flip at a = 1
    assert [str(w) for w in enumerate_walls(F(1, 2))] == ["1 W_II PseudoellipticFlip(1)"]


@pytest.mark.parametrize("fiber", [II, III, IV, II_STAR, III_STAR, IV_STAR, N(1), I_star(0), I_star(3),
                                   L, N(2), I(4), N(0), SMOOTH])
def test_fiber_model_is_monotone(fiber):
    order = [FiberModel.WEIERSTRASS, FiberModel.INTERMEDIATE, FiberModel.TWISTED]
    grid = sorted({F(i, 120) for i in range(121)} | {lct(fiber) if fiber not in (I(4), N(0), SMOOTH) else F(0)})
    ranks = [order.index(fiber_model(fiber, a)) for a in grid]
    assert ranks == sorted(ranks)


def test_fiber_model_examples():
    assert fiber_model(II, F(5, 6) - EPS) is FiberModel.WEIERSTRASS
    assert fiber_model(II, F(5, 6)) is FiberModel.INTERMEDIATE
    assert fiber_model(II, F(5, 6), closed_at_threshold=False) is FiberModel.WEIERSTRASS
    assert fiber_model(II, 1) is FiberModel.TWISTED
    assert fiber_model(I(3), F(1, 2)) is FiberModel.WEIERSTRASS
    with pytest.raises(RangeError):
        fiber_model(II, F(3, 2))


def test_hassett_examples():
    a = F(1, 12) + EPS
    assert hassett_base_stable(24, a, [11, 13]) is False
    assert hassett_base_stable(24, a, [11, 11, 2]) is True
    assert hassett_base_stable(24, a, [12, 12]) is False
    assert hassett_base_stable(24, F(1, 12), [1] * 24) is False
    with pytest.raises(ProfileError):
        hassett_base_stable(24, a, [10, 10])


def test_example_wall_functions_metadata():
    w1 = ex1_wall_function(13)
    assert w1.contraction is Contraction.RULED_CONTRACTION and w1.a_self_after == 0
    assert ex1_wall_function(19).on_a(F(1, 12)) == F(7, 24)
    w2 = ex2_wall_function(7)
    assert w2.contraction is Contraction.FLIP and w2.a_self_after == F(-1, 6)
    assert EX2_PAIRING == (F(-2, 3), F(1, 3), F(-1, 6))
    for bad in (12, 20):
        with pytest.raises(RangeError):
            ex1_wall_function(bad)
    for bad in (6, 15):
        with pytest.raises(RangeError):
            ex2_wall_function(bad)
