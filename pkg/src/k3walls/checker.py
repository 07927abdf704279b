"""Combinatorial validation of broken elliptic surfaces.

A :class:`SurfaceGraph` is a tree of fibered components glued along pairs
of fibers.  Pseudoelliptic trees hanging off a fiber are not components of
the graph: they are recorded on the :class:`FiberEntry` they sprout from,
together with the number of marked fibers that collided into it.

Marking bookkeeping: ``ComponentSpec.markings`` counts every marked fiber
with multiplicity, collisions included, so the free ``N_0`` (or ``I_1``)
markings on a component are ``markings - sum(collisions)``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import GraphError, ShapeError
from .fibers import (
    II,
    II_STAR,
    III,
    III_STAR,
    IV,
    IV_STAR,
    NONMINIMAL,
    SMOOTH,
    FiberType,
    Kind,
    N,
    deg_L_jinfty,
    k3_jinfty_configurations,
)
from .strata import (
    COLLISION_MAX,
    INTERMEDIATE_MIN,
    JINF_END_MAX,
    JINF_END_MIN,
    NORMAL_END_MIN,
    TOTAL_MARKINGS,
    Family,
    StratumDescriptor,
    SurfaceTypeLabel,
    collision_min,
    marking_range,
)
from .walls import FiberModel

J_DEGREE_TOTAL = 24


class ComponentKind(enum.Enum):
    NORMAL_ELLIPTIC = "NORMAL_ELLIPTIC"
    ISOTRIVIAL_JINF = "ISOTRIVIAL_JINF"
    TRIVIAL_PRODUCT = "TRIVIAL_PRODUCT"

    @property
    def jinf(self) -> bool:
        return self is not ComponentKind.NORMAL_ELLIPTIC


@dataclass(frozen=True)
class FiberEntry:
    fiber: FiberType
    model: FiberModel = FiberModel.WEIERSTRASS
    collisions: int = 0
    # fiber of the pseudoelliptic tree glued here, if a tree is attached
    tree: Optional[FiberType] = None

    @property
    def marked(self) -> bool:
        return self.collisions > 0 or self.tree is not None


@dataclass(frozen=True)
class ComponentSpec:
    kind: ComponentKind
    j_degree: int
    fibers: Tuple[FiberEntry, ...] = ()
    markings: int = 0
    section_self_int: Optional[Fraction] = None
    k3_type: bool = False

    @property
    def free_markings(self) -> int:
        return self.markings - sum(f.collisions for f in self.fibers)

    def nk_counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for f in self.fibers:
            if f.fiber.is_nk and f.fiber.param > 0:
                out[f.fiber.param] = out.get(f.fiber.param, 0) + 1
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class GluingEdge:
    endpoints: Tuple[int, int]
    fiber_pair: Tuple[FiberType, FiberType]


@dataclass(frozen=True)
class Violation:
    code: str
    condition: Optional[int] = None
    component: Optional[int] = None
    detail: str = ""

    def __str__(self):
        where = "" if self.component is None else f" component {self.component}"
        cond = "" if self.condition is None else f" (condition {self.condition})"
        return f"{self.code}{cond}{where}: {self.detail}"


@dataclass(frozen=True)
class SurfaceGraph:
    components: Tuple[ComponentSpec, ...]
    edges: Tuple[GluingEdge, ...] = ()
    marked_total: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.marked_total is None:
            object.__setattr__(self, "marked_total", sum(c.markings for c in self.components))
        _validate_shape(self)

    def neighbours(self) -> List[List[Tuple[int, FiberType, FiberType]]]:
        """Per component: ``(other end, own fiber, other fiber)`` for each edge."""
        return self._adjacency

    @functools.cached_property
    def _adjacency(self):
        out: List[list] = [[] for _ in self.components]
        for e in self.edges:
            (i, j), (fi, fj) = e.endpoints, e.fiber_pair
            out[i].append((j, fi, fj))
            out[j].append((i, fj, fi))
        return out


def _validate_shape(g: SurfaceGraph) -> None:
    m = len(g.components)
    if m == 0:
        raise GraphError("a surface needs at least one component")
    for e in g.edges:
        i, j = e.endpoints
        if not (0 <= i < m and 0 <= j < m) or i == j:
            raise GraphError(f"bad edge endpoints {e.endpoints}")
    if len(g.edges) != m - 1:
        raise GraphError(f"{m} components need {m - 1} edges for a tree, got {len(g.edges)}")
    seen = {0}
    stack = [0]
    adj = g.neighbours()
    while stack:
        for j, _, _ in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != m:
        raise GraphError("components are not connected")
    for idx, c in enumerate(g.components):
        if c.markings < 0 or c.free_markings < 0:
            raise GraphError(f"component {idx}: collisions exceed markings")
        if c.kind.jinf:
            if c.j_degree != 0:
                raise GraphError(f"component {idx}: j = oo components have j-degree 0")
            if any(not f.fiber.is_nk for f in c.fibers):
                raise GraphError(f"component {idx}: j = oo components only carry N_k fibers")
        if c.kind is ComponentKind.TRIVIAL_PRODUCT and c.fibers:
            raise GraphError(f"component {idx}: a trivial product has no special fibers")
        if c.section_self_int is not None and c.kind is ComponentKind.ISOTRIVIAL_JINF:
            if Fraction(c.section_self_int) != deg_L_jinfty(c.nk_counts()):
                raise GraphError(f"component {idx}: -S^2 disagrees with its N_k fibers")


# -- fiber bookkeeping -------------------------------------------------------------

_DUAL_PAIRS = {frozenset((II, II_STAR)), frozenset((III, III_STAR)), frozenset((IV, IV_STAR))}


def pole_order(f: FiberType) -> int:
    """Order of the pole of ``j`` at the fiber."""
    if f.kind in (Kind.I, Kind.I_STAR):
        return f.param
    return 0


def gluing_legal(a: FiberType, b: FiberType) -> bool:
    if a == SMOOTH and b == SMOOTH:
        return True
    if a.is_nodal and b.is_nodal:
        return True
    star_like = (lambda f: f.kind is Kind.I_STAR or f == N(1))
    if star_like(a) and star_like(b):
        return True
    return frozenset((a, b)) in _DUAL_PAIRS


def twisted_model_of_nk(k: int) -> FiberType:
    """Twisted model of an ``N_k`` fiber: the monodromy only sees ``k`` mod 2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return N(0) if k % 2 == 0 else N(1)


def tree_j_degree(entry: FiberEntry) -> int:
    """Degree of the j-map on whatever sprouted from a marked fiber."""
    if not entry.marked or entry.fiber.is_nodal:
        return 0
    if entry.fiber.is_nk:
        return 6 * entry.fiber.param
    return entry.collisions - pole_order(entry.fiber)


def attachment_is_lc(section_self_int_of_flipped) -> bool:
    """The flipped component leaves an slc cusp behind iff ``-S_0^2 <= 1``."""
    return Fraction(section_self_int_of_flipped) <= 1


# -- the checks ----------------------------------------------------------------------


def _jinf_clusters(g: SurfaceGraph) -> List[List[int]]:
    adj = g.neighbours()
    seen: set = set()
    clusters = []
    for start, c in enumerate(g.components):
        if not c.kind.jinf or start in seen:
            continue
        cluster, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            cluster.append(i)
            for j, _, _ in adj[i]:
                if j not in seen and g.components[j].kind.jinf:
                    seen.add(j)
                    stack.append(j)
        clusters.append(sorted(cluster))
    return clusters


def check_tsm_conditions(g: SurfaceGraph) -> List[Violation]:
    out: List[Violation] = []
    # (1) gluing pairs
    for e in g.edges:
        if not gluing_legal(*e.fiber_pair):
            out.append(Violation("IllegalGluing", 1, e.endpoints[0],
                                 f"{e.fiber_pair[0]}/{e.fiber_pair[1]} along {e.endpoints}"))
    # (2) total degree of the j-map, trees included
    total_j = sum(c.j_degree + sum(tree_j_degree(f) for f in c.fibers) for c in g.components)
    if total_j != J_DEGREE_TOTAL:
        out.append(Violation("DegreeSum", 2, None, f"j-map degree {total_j} != {J_DEGREE_TOTAL}"))
    # (3) markings with multiplicity
    listed = sum(c.markings for c in g.components)
    if g.marked_total != TOTAL_MARKINGS or listed != g.marked_total:
        out.append(Violation("MarkingTotal", 3, None,
                             f"declared {g.marked_total}, components carry {listed}"))
    # (4) singular fibers away from the double locus are nodal and marked
    for idx, c in enumerate(g.components):
        for f in c.fibers:
            ft = f.fiber
            if ft.kind is Kind.I and c.kind is ComponentKind.NORMAL_ELLIPTIC:
                if f.collisions != ft.param:
                    out.append(Violation("UnmarkedFiber", 4, idx,
                                         f"{ft} needs {ft.param} markings, has {f.collisions}"))
            elif ft.is_nodal:
                if f.collisions < 1:
                    out.append(Violation("UnmarkedFiber", 4, idx, f"{ft} is not marked"))
            elif ft != SMOOTH and not f.marked:
                out.append(Violation("UnmarkedFiber", 4, idx, f"{ft} carries no marking"))
            if f.tree is not None and not _tree_fits(f):
                out.append(Violation("TreeMismatch", 4, idx, f"{ft} cannot carry a tree along {f.tree}"))
    # (5) markings on each j = oo cluster match the poles it absorbs
    adj = g.neighbours()
    for cluster in _jinf_clusters(g):
        members = set(cluster)
        free = sum(g.components[i].free_markings for i in cluster)
        expected = 0
        for i in cluster:
            for j, _, theirs in adj[i]:
                if j not in members:
                    expected += pole_order(theirs)
            for f in g.components[i].fibers:
                if f.fiber.is_nk and f.fiber.param > 0 and f.marked:
                    expected += 6 * f.fiber.param - f.collisions
        if free != expected:
            out.append(Violation("ClusterMarkings", 5, cluster[0],
                                 f"components {cluster} carry {free} free markings, expected {expected}"))
    return out


def _tree_fits(f: FiberEntry) -> bool:
    """A tree on ``N_k`` is glued along ``I_n`` (k even) or ``I_n*`` (k odd) with
    ``n = 6k - collisions``; on a Kodaira fiber it is glued along a legal partner."""
    ft, tree = f.fiber, f.tree
    if ft.is_nk and ft.param > 0:
        want = Kind.I if twisted_model_of_nk(ft.param) == N(0) else Kind.I_STAR
        return tree.kind is want and tree.param == 6 * ft.param - f.collisions
    return gluing_legal(ft, tree)


def check_slc_fibers(g: SurfaceGraph) -> List[Violation]:
    out = []
    adj = g.neighbours()
    for idx, c in enumerate(g.components):
        for f in c.fibers:
            if f.fiber == NONMINIMAL:
                out.append(Violation("NonSlcFiber", None, idx, "non-minimal fiber"))
            elif f.fiber.is_nk and f.fiber.param >= 3 and f.tree is None:
                out.append(Violation("NonSlcFiber", None, idx, f"bare {f.fiber} is not slc"))
        for _, mine, _ in adj[idx]:
            if mine == NONMINIMAL or (mine.is_nk and mine.param >= 3):
                out.append(Violation("NonSlcFiber", None, idx, f"{mine} in the double locus"))
    return out


def lct_zero_advisories(g: SurfaceGraph) -> List[Tuple[int, FiberType]]:
    """Fibers that are slc but have log canonical threshold zero."""
    return [
        (idx, f.fiber)
        for idx, c in enumerate(g.components)
        for f in c.fibers
        if f.fiber == N(2) or f.fiber.kind is Kind.L
    ]


def check_collision_minimums(
    g: SurfaceGraph, per_nk_markings: Optional[Mapping[Tuple[int, int], int]] = None
) -> List[Violation]:
    """Each ``N_k`` fiber (``k >= 1``) absorbs at least ``k + 1`` markings.

    ``per_nk_markings`` maps ``(component, fiber index)`` to a count that
    overrides the one stored on the fiber.
    """
    per_nk_markings = per_nk_markings or {}
    out = []
    for idx, c in enumerate(g.components):
        for pos, f in enumerate(c.fibers):
            if not (f.fiber.is_nk and f.fiber.param > 0):
                continue
            got = per_nk_markings.get((idx, pos), f.collisions)
            need = collision_min(f.fiber.param)
            if got < need:
                out.append(Violation("TooFewCollisions", None, idx,
                                     f"{f.fiber} has {got} markings, needs {need}"))
    return out


def check_k3_budget(g: SurfaceGraph) -> List[Violation]:
    slc_configs = k3_jinfty_configurations()
    out = []
    for idx, c in enumerate(g.components):
        if not (c.k3_type and c.kind is ComponentKind.ISOTRIVIAL_JINF):
            continue
        counts = c.nk_counts()
        deg = deg_L_jinfty(counts)
        if deg != 2:
            out.append(Violation("BudgetMismatch", None, idx, f"deg L = {deg}, K3 type needs 2"))
            continue
        if counts in slc_configs:
            continue
        for f in c.fibers:
            if f.fiber.is_nk and f.fiber.param >= 3 and f.tree is None:
                out.append(Violation("RequiresAttachment", None, idx,
                                     f"{f.fiber} needs a pseudoelliptic tree"))
    return out


def check_end_markings(g: SurfaceGraph) -> List[Violation]:
    m = len(g.components)
    adj = g.neighbours()
    if m < 2 or any(len(a) > 2 for a in adj):
        raise ShapeError("end-marking bounds apply to chains of at least two components")
    out = []
    for idx, c in enumerate(g.components):
        if len(adj[idx]) == 1:
            need = JINF_END_MIN if c.kind.jinf else NORMAL_END_MIN
            if c.markings < need:
                out.append(Violation("EndTooFew", None, idx,
                                     f"end has {c.markings} markings, needs {need}"))
        elif c.markings < INTERMEDIATE_MIN:
            out.append(Violation("IntermediateUnstable", None, idx,
                                 "intermediate component carries no marking"))
    return out


def check_marking_ranges(g: SurfaceGraph, label: SurfaceTypeLabel) -> List[Violation]:
    """Free ``N_0`` counts on the ``j = oo`` main components of a catalog surface."""
    jinf = [i for i, c in enumerate(g.components) if c.kind is ComponentKind.ISOTRIVIAL_JINF]
    if len(jinf) != len(label.n0_range):
        raise ShapeError(f"type {label.label} has {len(label.n0_range)} j = oo components")
    out = []
    for i, (lo, hi) in zip(jinf, label.n0_range):
        free = g.components[i].free_markings
        if not lo <= free <= hi:
            out.append(Violation("MarkingRange", None, i,
                                 f"{free} marked N0 fibers outside [{lo}, {hi}] for type {label.label}"))
    return out


def check_below_twelfth(g: SurfaceGraph) -> List[Violation]:
    """Below weight ``1/12`` every ``I_n`` fiber has ``n <= 12``."""
    out = []
    adj = g.neighbours()
    for idx, c in enumerate(g.components):
        fibers = [f.fiber for f in c.fibers] + [mine for _, mine, _ in adj[idx]]
        for ft in fibers:
            if ft.kind is Kind.I and ft.param > 12:
                out.append(Violation("InTooLarge", None, idx, f"{ft} exceeds I_12"))
    return out


def validate(
    g: SurfaceGraph,
    label: Optional[SurfaceTypeLabel] = None,
    chain: bool = False,
    below_twelfth: bool = False,
) -> List[Violation]:
    out = check_tsm_conditions(g) + check_slc_fibers(g)
    out += check_collision_minimums(g) + check_k3_budget(g)
    if chain:
        out += check_end_markings(g)
    if label is not None:
        out += check_marking_ranges(g, label)
    if below_twelfth:
        out += check_below_twelfth(g)
    return out


# -- builders ----------------------------------------------------------------------


def _nk_entry(k: int, collisions: int, tree: bool) -> FiberEntry:
    if not tree:
        return FiberEntry(N(k), FiberModel.WEIERSTRASS, collisions)
    n = 6 * k - collisions
    tree_fiber = FiberType(Kind.I if k % 2 == 0 else Kind.I_STAR, n)
    return FiberEntry(N(k), FiberModel.INTERMEDIATE, collisions, tree_fiber)


def _split_collisions(nk: Sequence[int], absorbed: int) -> List[int]:
    """Distribute ``absorbed`` markings over ``N_k`` fibers within their bounds."""
    counts = [collision_min(k) for k in nk]
    extra = absorbed - sum(counts)
    if extra < 0:
        raise ValueError("too few markings for the N_k fibers")
    for i, k in enumerate(nk):
        step = min(extra, COLLISION_MAX[k] - counts[i])
        counts[i] += step
        extra -= step
    # whatever is left goes on the first fiber, beyond its usual maximum
    counts[0] += extra
    return counts


def jinf_component(nk: Sequence[int], free: int, share: int, k3_type=False) -> ComponentSpec:
    """An isotrivial ``j = oo`` main component with ``free`` marked ``N_0`` fibers.

    ``N_2`` fibers carry a tree and the rest are Weierstrass, as on the
    surfaces at small weight.
    """
    counts = _split_collisions(nk, share - free) if nk else []
    fibers = tuple(_nk_entry(k, c, tree=(k % 2 == 0 or k >= 3)) for k, c in zip(nk, counts))
    return ComponentSpec(
        ComponentKind.ISOTRIVIAL_JINF, 0, fibers, free + sum(counts),
        section_self_int=deg_L_jinfty({k: nk.count(k) for k in set(nk)}), k3_type=k3_type,
    )


def catalog_graph(label: SurfaceTypeLabel, free: Optional[Sequence[int]] = None) -> SurfaceGraph:
    """SurfaceGraph for a catalog type; ``free`` defaults to the lower range ends."""
    if free is None:
        free = [lo for lo, _ in label.n0_range]
    free = list(free)
    share = TOTAL_MARKINGS // len(label.components)
    comps = []
    it = iter(free)
    for shape in label.components:
        if shape.jinf:
            comps.append(jinf_component(shape.nk, next(it), share, k3_type=share == 24))
        else:
            comps.append(ComponentSpec(ComponentKind.NORMAL_ELLIPTIC, share, (), share,
                                       k3_type=share == 24))
    edges = []
    if len(comps) == 2:
        pair = SMOOTH if label.gluing == "I(0)" else FiberType.parse(label.gluing)
        edges.append(GluingEdge((0, 1), (pair, pair)))
    return SurfaceGraph(tuple(comps), tuple(edges))


def _rational_end(k: int) -> ComponentSpec:
    return ComponentSpec(ComponentKind.NORMAL_ELLIPTIC, 12, (), 12 - k)


def _jinf_end(s: int) -> ComponentSpec:
    # the 2N_1 end: both N_1 fibers absorb two markings, 17 - s free N_0's
    fibers = (_nk_entry(1, 2, False), _nk_entry(1, 2, False))
    return ComponentSpec(ComponentKind.ISOTRIVIAL_JINF, 0, fibers, 4 + JINF_END_MAX - s,
                         section_self_int=Fraction(1))


_N0 = N(0)


@functools.lru_cache(maxsize=None)
def _trivial(markings: int) -> ComponentSpec:
    return ComponentSpec(ComponentKind.TRIVIAL_PRODUCT, 0, (), markings)


def graph_from_stratum(d: StratumDescriptor) -> SurfaceGraph:
    """Chain (or Type II pair) realising a boundary stratum."""
    if d.family is Family.II:
        comps = (ComponentSpec(ComponentKind.NORMAL_ELLIPTIC, 12, (), 12),) * 2
        return SurfaceGraph(comps, (GluingEdge((0, 1), (SMOOTH, SMOOTH)),))
    if d.family is Family.II_INF:
        return SurfaceGraph((jinf_component((1, 1, 1, 1), 16, 24, k3_type=True),))
    left_jinf = d.family is not Family.III0
    right_jinf = d.family in (Family.III2, Family.III2_NOMID)
    left = _jinf_end(d.s) if left_jinf else _rational_end(d.s)
    right = _jinf_end(d.r) if right_jinf else _rational_end(d.r)
    left_fiber = N(0) if left_jinf else FiberType(Kind.I, d.s)
    right_fiber = N(0) if right_jinf else FiberType(Kind.I, d.r)
    middle = [_trivial(1 + a) for a in d.parts]
    comps = [left, *middle, right]
    last = len(comps) - 1
    edges = [
        GluingEdge((i, i + 1), (left_fiber if i == 0 else _N0, right_fiber if i + 1 == last else _N0))
        for i in range(last)
    ]
    return SurfaceGraph(tuple(comps), tuple(edges))
