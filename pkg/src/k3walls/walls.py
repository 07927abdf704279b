"""Walls in the weight ``a`` for 24-marked elliptic K3 surfaces.

Every wall is produced from the rule that creates it: section flips when
the base curve becomes unstable at ``a = 1/k``, contractions of
pseudoelliptic trees when ``a`` times the number of markings on the tree
reaches the log canonical threshold of the attaching fiber, and the two
families of isotrivial ``j = oo`` components whose wall is the zero of an
intersection number ``(K + F) . A`` computed on an explicit lattice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ProfileError, RangeError
from .fibers import (
    II,
    II_STAR,
    III,
    III_STAR,
    IV,
    IV_STAR,
    L,
    FiberType,
    I_star,
    Kind,
    N,
)

# Largest n with an I_n* fiber on a rational elliptic surface.
MAX_ISTAR_RATIONAL = 4
# Ranges of the j = oo main components that sprout a K3 along I_n / I_n*.
RULED_RANGE = range(13, 20)
FLIP_RANGE = range(7, 15)

# Euler numbers of the additive Kodaira fibers (= discriminant order).
_EULER = {II: 2, III: 3, IV: 4, II_STAR: 10, III_STAR: 9, IV_STAR: 8}
_DUAL = {II: II_STAR, III: III_STAR, IV: IV_STAR, II_STAR: II, III_STAR: III, IV_STAR: IV}
RATIONAL_MARKINGS = 12


# -- lct table ---------------------------------------------------------------


@dataclass(frozen=True)
class LctEntry:
    fiber: FiberType
    a0: Fraction
    every_param: bool = False

    @property
    def label(self) -> str:
        return "I*(n)" if self.every_param else str(self.fiber)


_LCT_ROWS = (
    LctEntry(II, Fraction(5, 6)),
    LctEntry(III, Fraction(3, 4)),
    LctEntry(IV, Fraction(2, 3)),
    LctEntry(N(1), Fraction(1, 2)),
    LctEntry(II_STAR, Fraction(1, 6)),
    LctEntry(III_STAR, Fraction(1, 4)),
    LctEntry(IV_STAR, Fraction(1, 3)),
    LctEntry(I_star(0), Fraction(1, 2), every_param=True),
)


def lct_table() -> list:
    return list(_LCT_ROWS)


def lct(fiber: FiberType) -> Fraction:
    for row in _LCT_ROWS:
        if row.fiber == fiber or (row.every_param and fiber.kind is Kind.I_STAR):
            return row.a0
    if fiber == L or fiber == N(2):
        return Fraction(0)
    raise ValueError(f"no log canonical threshold recorded for {fiber}")


# -- fiber models -------------------------------------------------------------


class FiberModel(enum.Enum):
    WEIERSTRASS = "WEIERSTRASS"
    INTERMEDIATE = "INTERMEDIATE"
    TWISTED = "TWISTED"


def fiber_model(fiber: FiberType, a, closed_at_threshold: bool = True) -> FiberModel:
    """Model of a marked fiber at weight ``a``.

    ``closed_at_threshold`` decides the boundary point ``a == a0``: by
    default the fiber is already intermediate there.
    """
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise RangeError(f"weight {a} outside [0, 1]")
    if fiber.is_nodal or fiber.kind is Kind.SMOOTH:
        return FiberModel.WEIERSTRASS
    if fiber == L or fiber == N(2):
        return FiberModel.INTERMEDIATE if a > 0 else FiberModel.WEIERSTRASS
    a0 = lct(fiber)
    if a == 1:
        return FiberModel.TWISTED
    if a < a0 or (a == a0 and not closed_at_threshold):
        return FiberModel.WEIERSTRASS
    return FiberModel.INTERMEDIATE


# -- walls --------------------------------------------------------------------


class WallKind(enum.Enum):
    W_I = "W_I"
    W_II = "W_II"
    W_III = "W_III"


class Event(enum.Enum):
    PSEUDOELLIPTIC_FLIP = "PseudoellipticFlip"
    CONTRACT_FIBER_TREE = "ContractFiberTree"
    RULED_CONTRACTION = "RuledContraction"
    FLIP_THEN_CONTRACT = "PseudoelliptFlipThenContract"


@dataclass(frozen=True)
class Transition:
    event: Event
    arg: object

    def __str__(self):
        return f"{self.event.value}({self.arg})"

    def sort_key(self):
        return (self.event.value, str(self.arg))


@dataclass(frozen=True)
class Wall:
    value: Fraction
    kind: WallKind
    transition: Transition

    def __post_init__(self):
        if not 0 < self.value <= 1:
            raise RangeError(f"wall value {self.value} outside (0, 1]")

    def sort_key(self):
        return (self.value, self.transition.sort_key())

    def __str__(self):
        return f"{self.value} {self.kind.value} {self.transition}"


def _section_flip_walls():
    # the base curve stays stable only while the total weight 24a exceeds 2
    k = 1
    while 24 * Fraction(1, k) > 2:
        yield Wall(Fraction(1, k), WallKind.W_II, Transition(Event.PSEUDOELLIPTIC_FLIP, k))
        k += 1


def tree_contraction_value(fiber: FiberType) -> Fraction:
    """Weight at which a rational pseudoelliptic attached along ``fiber`` contracts.

    The rational surface carries 12 singular fibers with multiplicity; the
    dual fiber it is glued along takes up its Euler number and the rest are
    markings.
    """
    if fiber.kind is Kind.I_STAR:
        glued = 6 + fiber.param
    else:
        glued = _EULER[_DUAL[fiber]]
    return lct(fiber) / (RATIONAL_MARKINGS - glued)


def _tree_walls():
    for fiber in (II, III, IV, II_STAR, III_STAR, IV_STAR):
        yield Wall(
            tree_contraction_value(fiber),
            WallKind.W_III,
            Transition(Event.CONTRACT_FIBER_TREE, fiber),
        )
    for k in range(MAX_ISTAR_RATIONAL + 1):
        fiber = I_star(k)
        yield Wall(
            tree_contraction_value(fiber),
            WallKind.W_III,
            Transition(Event.CONTRACT_FIBER_TREE, fiber),
        )


def _jinf_walls():
    for n in RULED_RANGE:
        wf = ex1_wall_function(n)
        yield Wall(wf.critical_a, WallKind.W_III, Transition(Event.RULED_CONTRACTION, n))
    for n in FLIP_RANGE:
        wf = ex2_wall_function(n)
        yield Wall(wf.critical_a, WallKind.W_III, Transition(Event.FLIP_THEN_CONTRACT, n))


def enumerate_walls(above: Optional[Fraction] = None) -> list:
    """All walls, or only those strictly above ``above``."""
    seen = {}
    for wall in (*_section_flip_walls(), *_tree_walls(), *_jinf_walls()):
        seen.setdefault((wall.value, wall.transition), wall)
    walls = sorted(seen.values(), key=Wall.sort_key)
    if above is not None:
        above = Fraction(above)
        walls = [w for w in walls if w.value > above]
    return walls


# -- Hassett stability of the base ---------------------------------------------


def chain_stable(markings: Sequence[int], a, collisions: Sequence[Sequence[int]] = ()) -> bool:
    """Stability of a chain of rational curves with equal weights ``a``.

    ``markings[i]`` counts the points on the i-th curve and ``collisions[i]``
    lists the sizes of coincident groups there.  Each curve needs weight
    above 2 counting nodes with weight 1, and no group may weigh more than 1.
    """
    a = Fraction(a)
    if not 0 < a <= 1:
        raise RangeError(f"weight {a} outside (0, 1]")
    m = len(markings)
    if m == 0:
        raise ProfileError("empty chain")
    for i, count in enumerate(markings):
        nodes = (i > 0) + (i < m - 1)
        if count * a + nodes <= 2:
            return False
        groups = collisions[i] if i < len(collisions) else ()
        if sum(groups) > count:
            raise ProfileError(f"component {i} has fewer points than its collisions")
        if any(g * a > 1 for g in groups):
            return False
    return True


def hassett_base_stable(num_points: int, a, collision_profile: Sequence[int]) -> bool:
    """Smooth base with ``num_points`` points grouped as ``collision_profile``."""
    if sum(collision_profile) != num_points:
        raise ProfileError(
            f"collision profile sums to {sum(collision_profile)}, expected {num_points}"
        )
    if any(c < 1 for c in collision_profile):
        raise ProfileError("collision classes must be nonempty")
    return chain_stable([num_points], a, [collision_profile])


def two_component_stable(split: Sequence[int], a, collisions=((), ())) -> bool:
    if len(split) != 2:
        raise ProfileError("two-component check needs exactly two counts")
    return chain_stable(split, a, collisions)


# -- intersection-number wall functions ------------------------------------------


@dataclass(frozen=True)
class Linear:
    """``const + slope * a``."""

    const: Fraction
    slope: Fraction

    def __call__(self, a) -> Fraction:
        return self.const + self.slope * Fraction(a)

    def root(self) -> Fraction:
        return -self.const / self.slope

    def __str__(self):
        return f"{self.const} + {self.slope}*a"


class Contraction(enum.Enum):
    RULED_CONTRACTION = "RULED_CONTRACTION"
    FLIP = "FLIP"


@dataclass(frozen=True)
class WallFunction:
    on_a: Linear
    on_g: Linear
    critical_a: Fraction
    contraction: Contraction
    a_self_after: Fraction = field(default=Fraction(0))


# Basis (A, G, f, S): A and G are the curves over the special point of the
# base (A meets the section S), f a general fiber, S the section.
_PAIRING_BASE = {
    ("f", "A"): 0, ("f", "G"): 0, ("f", "f"): 0, ("f", "S"): 1,
    ("S", "A"): 1, ("S", "G"): 0, ("S", "S"): -2,
}


class _Lattice:
    def __init__(self, a_sq, a_g, g_sq):
        self.table = dict(_PAIRING_BASE)
        self.table.update({("A", "A"): a_sq, ("A", "G"): a_g, ("G", "G"): g_sq})

    def pair(self, x: str, y: str) -> Fraction:
        key = (x, y) if (x, y) in self.table else (y, x)
        return Fraction(self.table[key])

    def dot(self, u: dict, v: dict) -> Fraction:
        return sum((cu * cv * self.pair(x, y) for x, cu in u.items() for y, cv in v.items()),
                   Fraction(0))


EX1_PAIRING = (Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2))
EX2_PAIRING = (Fraction(-2, 3), Fraction(1, 3), Fraction(-1, 6))


def _wall_function(pairing, canonical, a_coeff, f_coeff) -> tuple:
    """Evaluate ``(K + F) . A`` and ``(K + F) . G`` as linear functions of ``a``.

    ``F = G + a_coeff * a * A + f_coeff * a * f + 12 a S``.
    """
    lat = _Lattice(*pairing)
    const_part = dict(canonical)
    const_part["G"] = const_part.get("G", 0) + 1
    slope_part = {"A": a_coeff, "f": f_coeff, "S": 12}
    out = []
    for curve in ("A", "G"):
        c = lat.dot(const_part, {curve: 1})
        s = lat.dot(slope_part, {curve: 1})
        out.append(Linear(c, s))
    # contracting S changes A^2 by -(A.S)^2 / S^2
    a_self_after = lat.pair("A", "A") - lat.pair("A", "S") ** 2 / lat.pair("S", "S")
    return out[0], out[1], a_self_after


def ex1_wall_function(n: int) -> WallFunction:
    """Isotrivial component glued to a K3 along ``I_n``: contracts as a ruled surface."""
    if n not in RULED_RANGE:
        raise RangeError(f"n = {n} outside {RULED_RANGE.start}..{RULED_RANGE.stop - 1}")
    on_a, on_g, self_after = _wall_function(
        EX1_PAIRING, {"f": -2, "A": 2}, 24 - n, n
    )
    kind = Contraction.RULED_CONTRACTION if self_after == 0 else Contraction.FLIP
    return WallFunction(on_a, on_g, on_a.root(), kind, self_after)


def ex2_wall_function(n: int) -> WallFunction:
    """Isotrivial component glued to a K3 along ``I_n*``: flips first."""
    if n not in FLIP_RANGE:
        raise RangeError(f"n = {n} outside {FLIP_RANGE.start}..{FLIP_RANGE.stop - 1}")
    on_a, on_g, self_after = _wall_function(
        EX2_PAIRING, {"f": -1, "A": 1}, 18 - n, 6 + n
    )
    kind = Contraction.RULED_CONTRACTION if self_after == 0 else Contraction.FLIP
    return WallFunction(on_a, on_g, on_a.root(), kind, self_after)
