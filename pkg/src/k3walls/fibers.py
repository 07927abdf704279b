"""Singular fibers of Weierstrass fibrations ``y^2 = x^3 + A x + B``.

Fibers are read off from the vanishing orders of ``A``, ``B`` and the
discriminant at each place.  Besides the Kodaira types this covers the
non-minimal boundary case ``min(3 vA, 2 vB) == 12`` (type ``L``) and the
``N_k`` fibers of isotrivial fibrations with ``j`` identically infinity,
where the discriminant vanishes identically.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import (
    DegreeError,
    InconsistentProfileError,
    MalformedIsotrivialError,
    ParseError,
    ZeroInputError,
)
from .poly import (
    INFINITE,
    BinaryForm,
    Place,
    RationalLike,
    place_decompose,
    power,
    product,
    weierstrass_discriminant,
)


class Kind(enum.Enum):
    SMOOTH = "SMOOTH"
    I = "I"
    I_STAR = "I*"
    II = "II"
    III = "III"
    IV = "IV"
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"
    L = "L"
    N = "N"
    NONMINIMAL = "NONMINIMAL"


_PARAM_MIN = {Kind.I: 1, Kind.I_STAR: 0, Kind.N: 0}


@functools.total_ordering
@dataclass(frozen=True)
class FiberType:
    kind: Kind
    param: Optional[int] = None

    def __post_init__(self):
        lo = _PARAM_MIN.get(self.kind)
        if lo is None:
            if self.param is not None:
                raise ValueError(f"{self.kind.value} takes no parameter")
        elif self.param is None or self.param < lo:
            raise ValueError(f"{self.kind.value} needs an integer parameter >= {lo}")

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (list(Kind).index(self.kind), -1 if self.param is None else self.param)

    def __str__(self):
        if self.param is None:
            return self.kind.value
        return f"{self.kind.value}({self.param})"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "FiberType":
        m = re.fullmatch(r"\s*(I\*|I|N)\s*\(\s*(\d+)\s*\)\s*", text)
        if m:
            return cls(Kind(m.group(1)), int(m.group(2)))
        try:
            return cls(Kind(text.strip()))
        except ValueError:
            raise ParseError(f"unknown fiber type {text!r}") from None

    @property
    def is_nk(self) -> bool:
        return self.kind is Kind.N

    @property
    def is_nodal(self) -> bool:
        """Stable fibers: ``I_n`` and ``N_0``."""
        return self.kind is Kind.I or (self.kind is Kind.N and self.param == 0)


SMOOTH = FiberType(Kind.SMOOTH)
II = FiberType(Kind.II)
III = FiberType(Kind.III)
IV = FiberType(Kind.IV)
II_STAR = FiberType(Kind.II_STAR)
III_STAR = FiberType(Kind.III_STAR)
IV_STAR = FiberType(Kind.IV_STAR)
L = FiberType(Kind.L)
NONMINIMAL = FiberType(Kind.NONMINIMAL)


def I(n: int) -> FiberType:  # noqa: E743
    return FiberType(Kind.I, n)


def I_star(n: int) -> FiberType:
    return FiberType(Kind.I_STAR, n)


def N(k: int) -> FiberType:
    return FiberType(Kind.N, k)


@dataclass(frozen=True)
class WeierstrassData:
    N: int
    A: BinaryForm
    B: BinaryForm

    def __post_init__(self):
        if self.N < 1:
            raise DegreeError(f"N must be positive, got {self.N}")
        if self.A.degree != 4 * self.N or self.B.degree != 6 * self.N:
            raise DegreeError(
                f"expected degrees ({4 * self.N}, {6 * self.N}), "
                f"got ({self.A.degree}, {self.B.degree})"
            )
        if self.A.is_zero() and self.B.is_zero():
            raise ZeroInputError("A and B are both identically zero")


@dataclass(frozen=True)
class FiberReport:
    place: Place
    fiber: FiberType
    slc: bool
    discriminant_mult: object
    lct_zero: bool = False


def is_slc(fiber: FiberType) -> bool:
    if fiber.kind is Kind.NONMINIMAL:
        return False
    return not (fiber.kind is Kind.N and fiber.param >= 3)


def has_lct_zero(fiber: FiberType) -> bool:
    return fiber == L or fiber == N(2)


def discriminant(w: WeierstrassData) -> BinaryForm:
    return weierstrass_discriminant(w.A, w.B)


def _expected_disc(va, vb):
    """Order of ``4A^3 + 27B^2`` forced by the orders of ``A`` and ``B``.

    Returns ``(value, exact)``; when the two leading terms can cancel only a
    lower bound is known.
    """
    a3, b2 = 3 * va, 2 * vb
    if a3 == b2:
        return a3, False
    return min(a3, b2), True


def classify_place(profile, isotrivial_jinf: bool) -> FiberType:
    va, vb, vd = profile
    if (vd is INFINITE) != bool(isotrivial_jinf):
        raise InconsistentProfileError(
            f"profile {profile} does not match isotrivial_jinf={isotrivial_jinf}"
        )
    if isotrivial_jinf:
        if va is INFINITE or vb is INFINITE or va % 2 or 2 * vb != 3 * va:
            raise MalformedIsotrivialError(f"profile {profile} is not of the form (2k, 3k)")
        return N(va // 2)

    if min(va, vb) < 0 or vd < 0:
        raise InconsistentProfileError(f"negative order in {profile}")
    forced, exact = _expected_disc(va, vb)
    if (exact and vd != forced) or (not exact and vd < forced):
        raise InconsistentProfileError(f"discriminant order {vd} impossible for {profile}")

    m = min(3 * va, 2 * vb)
    if m > 12:
        return NONMINIMAL
    if m == 12:
        return L
    if vd == 0:
        return SMOOTH
    if va == 0 and vb == 0:
        return I(vd)
    if vb == 1:
        return II
    if va == 1:
        return III
    if vb == 2:
        return IV
    if va == 2 and vb == 3:
        return I_star(vd - 6)
    if vd == 6:
        return I_star(0)
    if vb == 4:
        return IV_STAR
    if va == 3:
        return III_STAR
    if vb == 5:
        return II_STAR
    raise InconsistentProfileError(f"no fiber type for {profile}")  # pragma: no cover


def classify_all(w: WeierstrassData) -> list:
    isotrivial = discriminant(w).is_zero()
    reports = []
    for place in place_decompose(w.A, w.B):
        fiber = classify_place(place.profile, isotrivial)
        reports.append(
            FiberReport(place, fiber, is_slc(fiber), place.v_disc, has_lct_zero(fiber))
        )
    return reports


def nk_counts(reports: Sequence[FiberReport]) -> dict:
    """``{k: number of N_k fibers}``, counting each place by its degree."""
    out: dict = {}
    for r in reports:
        if r.fiber.is_nk:
            out[r.fiber.param] = out.get(r.fiber.param, 0) + r.place.degree
    return dict(sorted(out.items()))


def disc_total(reports: Sequence[FiberReport]) -> int:
    """Roots of the discriminant counted with multiplicity."""
    return sum(r.place.degree * r.discriminant_mult for r in reports)


# -- j = infinity bookkeeping ------------------------------------------------


def deg_L_jinfty(fiber_counts: Mapping[int, int]) -> Fraction:
    """Degree of the fundamental line bundle of an isotrivial ``j = oo`` fibration."""
    total = Fraction(0)
    for k, a in fiber_counts.items():
        if a < 0:
            raise ValueError(f"negative count for N_{k}")
        total += Fraction(a * k, 2)
    return total


def k3_jinfty_configurations(max_k: int = 2, target: int = 2) -> list:
    """All slc ``N_k`` configurations with ``deg L == target``."""
    found = []

    def walk(k, remaining, acc):
        if k == 0:
            if remaining == 0:
                found.append({j: a for j, a in sorted(acc.items()) if a})
            return
        for a in range(int(remaining * 2 / k) + 1):
            acc[k] = a
            walk(k - 1, remaining - Fraction(a * k, 2), acc)
        del acc[k]

    walk(max_k, Fraction(target), {})
    return sorted(found, key=lambda c: sorted(c.items(), key=lambda kv: -kv[0]))


def nk_surgery_degL_delta() -> int:
    """Change of ``deg L`` when an ``N_k`` fiber is traded for ``N_{k+2}``."""
    return 1


def make_nk_data(orders, N: int, roots: Sequence[Optional[RationalLike]]) -> WeierstrassData:
    """Isotrivial ``j = oo`` data with an ``N_{k_i}`` fiber at each root.

    ``orders`` is one ``k`` for all roots or a sequence aligned with
    ``roots``; ``None`` stands for the point at infinity.
    """
    roots = list(roots)
    if isinstance(orders, int):
        orders = [orders] * len(roots)
    orders = list(orders)
    if len(orders) != len(roots):
        raise ValueError("orders and roots must have the same length")
    if any(k < 1 for k in orders):
        raise ValueError("each N_k needs k >= 1")
    if len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct")
    if 2 * sum(orders) != 4 * N:
        raise DegreeError(f"orders sum to {sum(orders)}, need {2 * N} for N={N}")
    lines = [BinaryForm.linear(r) for r in roots]
    a = product(power(t, 2 * k) for t, k in zip(lines, orders)).scale(Fraction(-1, 3))
    b = product(power(t, 3 * k) for t, k in zip(lines, orders)).scale(Fraction(2, 27))
    return WeierstrassData(N, a, b)
