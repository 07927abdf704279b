"""Boundary strata of the 24-marked space at small weight.

Type III surfaces are chains ``X_0 ∪ X_1 ∪ ... ∪ X_n ∪ X_{n+1}``: two end
components (rational elliptic, or the isotrivial ``2N_1`` surface) and ``n``
trivial intermediate components, each intermediate carrying one fixed
marking plus ``a_i`` free ones.  A stratum is a descriptor recording the
gluing data, the marking composition and the product of spaces that
parametrizes it.  Enumeration is lazy: the III families hold about a
million strata.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Sequence, Tuple

TOTAL_MARKINGS = 24
MAX_IN_RATIONAL = 9  # largest I_n on a rational elliptic surface
JINF_END_MAX = 17  # the A^(17 - s) factor of a 2N_1 end

# Lower bounds on markings per chain component.
NORMAL_END_MIN = 3
JINF_END_MIN = 4
INTERMEDIATE_MIN = 1

# Markings an N_k fiber absorbs: at least k + 1 colliding I_1's, at most what
# the largest attached surface leaves over.
COLLISION_MAX = {1: 5, 2: 11, 3: 11, 4: 11}


def collision_min(k: int) -> int:
    return k + 1


class Family(enum.Enum):
    II = "II"
    II_INF = "II_INF"
    III0 = "III0"
    III1 = "III1"
    III1_NOMID = "III1_NOMID"
    III2 = "III2"
    III2_NOMID = "III2_NOMID"


III_FAMILIES = (Family.III0, Family.III1, Family.III1_NOMID, Family.III2, Family.III2_NOMID)


@dataclass(frozen=True)
class RnSpace:
    """Rational elliptic surfaces with a section and a marked ``I_n`` fiber."""

    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_IN_RATIONAL:
            raise ValueError(f"R_n needs 0 <= n <= {MAX_IN_RATIONAL}")

    @property
    def dim(self) -> int:
        return 9 - self.n

    @property
    def components(self) -> int:
        return 2 if self.n == 8 else 1


class FactorKind(enum.Enum):
    R = "R"
    GM = "Gm"
    A = "A"
    SYM_P1 = "SymP1"
    JLINE = "Jline"


@dataclass(frozen=True)
class Factor:
    kind: FactorKind
    k: int = 1

    @functools.cached_property
    def dim(self) -> int:
        if self.kind is FactorKind.R:
            return RnSpace(self.k).dim
        if self.kind is FactorKind.JLINE:
            return 1
        return self.k

    def __str__(self):
        if self.kind is FactorKind.JLINE:
            return "Jline"
        return f"{self.kind.value}({self.k})"


@functools.lru_cache(maxsize=None)
def _factor(kind: FactorKind, k: int = 1) -> Factor:
    return Factor(kind, k)


@dataclass(frozen=True)
class StratumDescriptor:
    family: Family
    r: Optional[int]
    s: Optional[int]
    n: int
    parts: Tuple[int, ...]
    dim: int
    factors: Tuple[Factor, ...]
    # the dimension lost to a fiber product over the j-line, if any
    correction: int = 0
    annotations: Tuple[str, ...] = field(default=())

    @property
    def factor_dim(self) -> int:
        return sum(f.dim for f in self.factors) + self.correction

    def family_dim(self) -> int:
        """Dimension predicted by the family's closed formula."""
        return {
            Family.II: 17,
            Family.II_INF: 17,
            Family.III0: 18 - self.n,
            Family.III1: 17 - self.n,
            Family.III1_NOMID: 17,
            Family.III2: 16 - self.n,
            Family.III2_NOMID: 16,
        }[self.family]

    def __str__(self):
        head = f"{self.family.value}"
        if self.r is not None:
            head += f" r={self.r} s={self.s} n={self.n}"
            if self.parts:
                head += " a=(" + ",".join(map(str, self.parts)) + ")"
        return f"{head} dim={self.dim} [{' x '.join(map(str, self.factors))}]"


# -- type II -------------------------------------------------------------------


def type2_strata() -> list:
    r0 = _factor(FactorKind.R, 0)
    return [
        StratumDescriptor(
            Family.II, None, None, 0, (), 17, (r0, r0), correction=-1,
            annotations=("fiber product over the j-line", "quotient by swapping the factors"),
        ),
        StratumDescriptor(
            Family.II_INF, None, None, 0, (), 17,
            (_factor(FactorKind.SYM_P1, 16), _factor(FactorKind.JLINE)),
        ),
    ]


# -- type III ------------------------------------------------------------------


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions of ``total`` into ``parts`` non-negative integers,
    in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _end(jinf: bool, k: int) -> Factor:
    return _factor(FactorKind.A, JINF_END_MAX - k) if jinf else _factor(FactorKind.R, k)


def _family_shape(family: Family):
    """``(left end j=oo, right end j=oo, markings fixed on the ends, s range, r range)``."""
    rs = range(1, MAX_IN_RATIONAL + 1)
    js = range(1, JINF_END_MAX + 1)
    return {
        Family.III0: (False, False, 0, rs, rs),
        Family.III1: (True, False, 9, js, rs),
        Family.III1_NOMID: (True, False, 9, range(0, JINF_END_MAX + 1), rs),
        Family.III2: (True, True, 18, js, js),
        Family.III2_NOMID: (True, True, 18, range(0, JINF_END_MAX + 1), range(0, JINF_END_MAX + 1)),
    }[family]


def _iter_family(family: Family, r_filter=None, s_filter=None, n_filter=None, max_n=None):
    left_jinf, right_jinf, offset, s_range, r_range = _family_shape(family)
    nomid = family in (Family.III1_NOMID, Family.III2_NOMID)
    base_dim = {Family.III0: 18, Family.III1: 17, Family.III1_NOMID: 17,
                Family.III2: 16, Family.III2_NOMID: 16}[family]
    for r in r_range:
        if r_filter is not None and r != r_filter:
            continue
        for s in s_range:
            if s_filter is not None and s != s_filter:
                continue
            budget = r + s - offset  # markings left for intermediate components
            left, right = _end(left_jinf, s), _end(right_jinf, r)
            if nomid:
                if budget == 0 and (n_filter in (None, 0)):
                    yield StratumDescriptor(family, r, s, 0, (), base_dim, (left, right))
                continue
            top = budget if max_n is None else min(budget, max_n)
            for n in range(1, top + 1):
                if n_filter is not None and n != n_filter:
                    continue
                dim = base_dim - n
                for parts in compositions(budget - n, n):
                    factors = (left,) + tuple(_factor(FactorKind.GM, a) for a in parts) + (right,)
                    yield StratumDescriptor(family, r, s, n, parts, dim, factors)


def _canonical(d: StratumDescriptor) -> bool:
    """Keep one of each end-swapped pair in the symmetric families."""
    if d.family not in (Family.III0, Family.III2, Family.III2_NOMID):
        return True
    return (d.r, d.s, d.parts) <= (d.s, d.r, d.parts[::-1])


def iter_strata(
    families: Optional[Sequence[Family]] = None,
    dim: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    n: Optional[int] = None,
    max_n: Optional[int] = None,
    canonicalize: bool = False,
) -> Iterator[StratumDescriptor]:
    families = list(Family) if families is None else [Family(f) for f in families]
    for fam in families:
        if fam in (Family.II, Family.II_INF):
            gen = (d for d in type2_strata() if d.family is fam)
            if r is not None or s is not None or (n not in (None, 0)):
                continue
        else:
            gen = _iter_family(fam, r, s, n, max_n)
        for d in gen:
            if dim is not None and d.dim != dim:
                continue
            if canonicalize and not _canonical(d):
                continue
            yield d


def enumerate_strata(families=None, dim=None, **kw) -> list:
    return list(iter_strata(families, dim, **kw))


def count_strata(
    family,
    max_n: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
) -> int:
    """Closed-form number of strata, summing binomial composition counts."""
    family = Family(family)
    if family in (Family.II, Family.II_INF):
        return 1 if r is None and s is None else 0
    left_jinf, right_jinf, offset, s_range, r_range = _family_shape(family)
    nomid = family in (Family.III1_NOMID, Family.III2_NOMID)
    total = 0
    for rr in r_range:
        if r is not None and rr != r:
            continue
        for ss in s_range:
            if s is not None and ss != s:
                continue
            budget = rr + ss - offset
            if nomid:
                total += budget == 0
                continue
            top = budget if max_n is None else min(budget, max_n)
            for k in range(1, top + 1):
                m = budget - k
                total += comb(m + k - 1, k - 1)
    return total


def max_intermediate_components(left_jinf: bool = False, right_jinf: bool = False) -> int:
    ends = (JINF_END_MIN if left_jinf else NORMAL_END_MIN) + (
        JINF_END_MIN if right_jinf else NORMAL_END_MIN
    )
    return (TOTAL_MARKINGS - ends) // INTERMEDIATE_MIN


# -- surface types at small weight -------------------------------------------------


@dataclass(frozen=True)
class ComponentShape:
    """One main component: its ``N_k`` fibers and whether it is normal."""

    jinf: bool
    nk: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SurfaceTypeLabel:
    label: str
    description: str
    components: Tuple[ComponentShape, ...]
    gluing: Optional[str]
    n0_range: Tuple[Tuple[int, int], ...]

    def free_components(self):
        return [c for c in self.components if c.jinf]


def marking_range(nk: Sequence[int], total: int) -> Tuple[int, int]:
    """Interval of free ``N_0`` markings on a ``j = oo`` component whose
    ``N_k`` fibers absorb between ``k + 1`` and ``COLLISION_MAX[k]`` markings."""
    lo = total - sum(COLLISION_MAX[k] for k in nk)
    hi = total - sum(collision_min(k) for k in nk)
    return lo, hi


def _label(label, description, comps, gluing=None) -> SurfaceTypeLabel:
    share = TOTAL_MARKINGS // len(comps)
    ranges = tuple(marking_range(c.nk, share) for c in comps if c.jinf)
    return SurfaceTypeLabel(label, description, tuple(comps), gluing, ranges)


def surface_type_catalog() -> list:
    normal = ComponentShape(jinf=False)
    return [
        _label("A", "pseudoelliptic K3, section contracted, Weierstrass pseudofibers", [normal]),
        _label("B", "isotrivial j=oo pseudoelliptic with 4N1", [ComponentShape(True, (1, 1, 1, 1))]),
        _label("C", "j=oo with 2N1 and an intermediate N2 carrying a tree",
               [ComponentShape(True, (1, 1, 2))]),
        _label("D", "j=oo with two intermediate N2 each carrying a tree",
               [ComponentShape(True, (2, 2))]),
        _label("E", "two rational pseudoelliptics glued along I0", [normal, normal], "I(0)"),
        _label("F", "two j=oo surfaces, one intermediate N2 with a tree on each",
               [ComponentShape(True, (2,)), ComponentShape(True, (2,))], "N(0)"),
        _label("G", "two j=oo surfaces with 2N1 each",
               [ComponentShape(True, (1, 1)), ComponentShape(True, (1, 1))], "N(0)"),
        _label("H", "j=oo with 2N1 glued to j=oo with an intermediate N2 and a tree",
               [ComponentShape(True, (1, 1)), ComponentShape(True, (2,))], "N(0)"),
    ]


def single_component_ranges() -> dict:
    """Marking ranges for the single non-normal main components at ``1/12 + eps``."""
    shapes = {"a": (1, 1, 1, 1), "b": (1, 1, 2), "c": (2, 2), "d": (1, 3), "e": (4,)}
    return {key: marking_range(nk, TOTAL_MARKINGS) for key, nk in shapes.items()}


def two_component_ranges() -> dict:
    """Same for two main components, 12 markings each; case 3 glues one N1."""
    half = TOTAL_MARKINGS // 2
    return {
        3: (marking_range((1,), half),),
        4: (marking_range((2,), half),) * 2,
        5: (marking_range((1, 1), half),) * 2,
        6: (marking_range((1, 1), half), marking_range((2,), half)),
    }
