"""GIT stability of Weierstrass data with one marked fiber.

A marked triple ``(A, B, l)`` is unstable exactly when some point ``q``
carries too much vanishing of ``A`` and ``B``, with the threshold lowered
by one when ``q`` is the marked point.  :func:`marked_stability` applies
that vanishing-order test; :func:`hm_oracle` re-derives the verdict from
the one-parameter-subgroup weights on the coordinates of the
Segre-embedded point, and :func:`slc_marked_stability` re-derives it from
the fiber types.  The three are kept independent on purpose.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DegreeError, ZeroInputError
from .fibers import (
    L,
    WeierstrassData,
    classify_all,
    discriminant,
    nk_counts,
)
from .poly import (
    INFINITE,
    BinaryForm,
    Place,
    order,
    place_decompose,
    substitute,
    weierstrass_discriminant,
)


class Status(enum.Enum):
    STABLE = "STABLE"
    UNSTABLE = "UNSTABLE"


class BoundaryClass(enum.Enum):
    INTERIOR_ADE = "INTERIOR_ADE"
    SLC_JINF = "SLC_JINF"
    L_LOCUS = "L_LOCUS"
    POLYSTABLE_CORNER = "POLYSTABLE_CORNER"
    UNSTABLE = "UNSTABLE"


@dataclass(frozen=True)
class MarkedTriple:
    w: WeierstrassData
    l: BinaryForm

    def __post_init__(self):
        if self.l.degree != 1:
            raise DegreeError(f"marker must be linear, got degree {self.l.degree}")
        if self.l.is_zero():
            raise ZeroInputError("marker l is identically zero")

    @property
    def N(self) -> int:
        return self.w.N

    def transform(self, matrix) -> "MarkedTriple":
        """Pull back ``A, B, l`` along the linear substitution ``matrix``."""
        w = WeierstrassData(self.N, substitute(self.w.A, matrix), substitute(self.w.B, matrix))
        return MarkedTriple(w, substitute(self.l, matrix))

    def rescale(self, lam, mu) -> "MarkedTriple":
        w = WeierstrassData(self.N, self.w.A.scale(lam**4), self.w.B.scale(lam**6))
        return MarkedTriple(w, self.l.scale(mu))


@dataclass(frozen=True)
class Witness:
    place: Place
    v_l: int


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    witness: Optional[Witness] = None

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE


STABLE = StabilityVerdict(Status.STABLE)


def miranda_minimal(w: WeierstrassData) -> bool:
    return all(p.v_a <= 3 or p.v_b <= 5 for p in place_decompose(w.A, w.B))


def candidate_places(t: MarkedTriple) -> list:
    """Places of ``(A, B)`` plus the marked point, with ``v_q(l)`` for each."""
    root = t.l.normalized()
    places = place_decompose(t.w.A, t.w.B)
    out = [(p, 1 if p.form == root else 0) for p in places]
    if all(p.form != root for p in places):
        disc = weierstrass_discriminant(t.w.A, t.w.B)
        prof = (order(root, t.w.A), order(root, t.w.B), order(root, disc))
        out.append((Place(root, prof), 1))
    return sorted(out, key=lambda pv: pv[0].form.sort_key())


def destabilizes(va, vb, v_l: int, N: int, strict_statement: bool = False) -> bool:
    """The vanishing-order test at a single point.

    With ``strict_statement`` the marked case additionally asks for one of
    the two inequalities to be an equality; the locus is the same because
    the remaining points already satisfy the strict test.
    """
    if va > 2 * N and vb > 3 * N:
        return True
    if v_l == 1 and va >= 2 * N and vb >= 3 * N:
        return not strict_statement or va == 2 * N or vb == 3 * N
    return False


def marked_stability(t: MarkedTriple, strict_statement: bool = False) -> StabilityVerdict:
    for place, v_l in candidate_places(t):
        if destabilizes(place.v_a, place.v_b, v_l, t.N, strict_statement):
            return StabilityVerdict(Status.UNSTABLE, Witness(place, v_l))
    return STABLE


# -- Hilbert-Mumford oracle ---------------------------------------------------

Point = Union[None, int, Fraction, Place]


def _to_origin(point) -> tuple:
    """Substitution sending ``point`` to ``[0, 1]`` (the zero of ``T0``)."""
    if point is None:
        return ((0, 1), (1, 0))
    return ((1, point), (0, 1))


def _local_data(t: MarkedTriple, point):
    """Coefficient supports of ``A, B`` and the marker coordinates after moving
    ``point`` to the origin."""
    if isinstance(point, Place):
        # irrational place: generic coordinates with the same vanishing orders
        da, db = 4 * t.N, 6 * t.N
        sa = [] if point.v_a is INFINITE else list(range(point.v_a, da + 1))
        sb = [] if point.v_b is INFINITE else list(range(point.v_b, db + 1))
        return sa, sb, 1, 1
    m = _to_origin(point)
    a = substitute(t.w.A, m)
    b = substitute(t.w.B, m)
    l = substitute(t.l, m)
    sa = [i for i, c in enumerate(a.coeffs) if c]
    sb = [i for i, c in enumerate(b.coeffs) if c]
    return sa, sb, l.coeffs[0], l.coeffs[1]


def hm_weights(t: MarkedTriple, point, e: int = 1) -> list:
    """Weights of every nonzero coordinate under ``T0 -> s^e T0, T1 -> s^-e T1``."""
    n = t.N
    sa, sb, l0, l1 = _local_data(t, point)
    out = []
    for l_coord, sign in ((l0, -1), (l1, 1)):
        if not l_coord:
            continue
        for ijk in itertools.combinations_with_replacement(sa, 3):
            out.append(2 * e * sum(ijk) - 12 * e * n + sign * e)
        for lm in itertools.combinations_with_replacement(sb, 2):
            out.append(2 * e * sum(lm) - 12 * e * n + sign * e)
    return out


def default_candidates(t: MarkedTriple) -> list:
    """Rational points (``None`` for infinity) or whole places to test."""
    out = []
    for place, _ in candidate_places(t):
        f = place.form
        if f.degree > 1:
            out.append(place)
        elif f.coeffs[1] == 0:
            out.append(None)
        else:
            out.append(-f.coeffs[0] / f.coeffs[1])
    return out


def hm_oracle(
    t: MarkedTriple, candidate_points: Optional[Sequence[Point]] = None, e: int = 1
) -> StabilityVerdict:
    """Unstable iff at some candidate every surviving weight has the sign of ``e``."""
    if e == 0:
        raise ValueError("the one-parameter subgroup needs a nonzero exponent")
    points = default_candidates(t) if candidate_points is None else candidate_points
    for point in points:
        weights = hm_weights(t, point, e)
        if weights and all(w * e > 0 for w in weights):
            return StabilityVerdict(Status.UNSTABLE, _witness_for(t, point))
    return STABLE


def _witness_for(t: MarkedTriple, point) -> Witness:
    if isinstance(point, Place):
        return Witness(point, 0)
    form = BinaryForm.linear(point)
    disc = weierstrass_discriminant(t.w.A, t.w.B)
    prof = (order(form, t.w.A), order(form, t.w.B), order(form, disc))
    return Witness(Place(form, prof), order(form, t.l))


# -- fiber-type path (K3 case) ------------------------------------------------


def slc_marked_stability(t: MarkedTriple) -> Status:
    """Stability read off from fiber types: the marked surface must be slc.

    Every fiber must be slc (no non-minimal point, no ``N_k`` with ``k >= 3``)
    and the marked fiber may not have log canonical threshold zero.
    """
    if t.N != 2:
        raise ValueError("the fiber-type criterion is stated for K3 data (N = 2)")
    root = t.l.normalized()
    for r in classify_all(t.w):
        if not r.slc:
            return Status.UNSTABLE
        if r.lct_zero and r.place.form == root:
            return Status.UNSTABLE
    return Status.STABLE


# -- unmarked boundary --------------------------------------------------------


def classify_git_boundary(w: WeierstrassData) -> BoundaryClass:
    if w.N != 2:
        raise ValueError("boundary classification is only available for N = 2")
    reports = classify_all(w)
    if any(min(3 * r.place.v_a, 2 * r.place.v_b) > 12 for r in reports):
        return BoundaryClass.UNSTABLE
    if discriminant(w).is_zero():
        if nk_counts(reports) == {2: 2}:
            return BoundaryClass.POLYSTABLE_CORNER
        return BoundaryClass.SLC_JINF
    if any(r.fiber == L for r in reports):
        return BoundaryClass.L_LOCUS
    return BoundaryClass.INTERIOR_ADE
