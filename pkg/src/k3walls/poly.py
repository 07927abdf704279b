"""Exact arithmetic on binary forms over the rationals.

A binary form of degree ``d`` is stored as ``d + 1`` coefficients where
entry ``i`` multiplies ``T0**i * T1**(d - i)``.  Setting ``T1 = 1`` turns
the coefficient tuple into an ordinary univariate polynomial in ``t = T0``
(low degree first), and the power of ``T1`` dividing the form is the gap
between ``d`` and the degree of that polynomial.  Every algorithm here
works on that dehomogenisation and accounts for the point at infinity
``[1, 0]`` (the form ``T1``) separately.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DegreeError, DivisibilityError, ZeroInputError

Rational = Fraction
RationalLike = Union[int, Fraction, str]


@functools.total_ordering
class _Infinite:
    """Vanishing order of the zero form.  Larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITE")

    def __mul__(self, k):
        if k == 0:
            raise ValueError("0 * INFINITE is undefined")
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def as_rational(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- univariate helpers (lists of Fractions, low degree first) -------------


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    rem = list(num)
    _trim(rem)
    dd = len(den) - 1
    lead = den[-1]
    if len(rem) - 1 < dd:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1 - dd, -1, -1):
        c = rem[k + dd]
        if c:
            c = c / lead
            quot[k] = c
            for j in range(dd + 1):
                rem[k + j] -= c * den[j]
    rem = _trim(rem[:dd])
    return quot, rem


def _monic(p: Sequence[Fraction]) -> list:
    lead = p[-1]
    if lead == 1:
        return list(p)
    return [c / lead for c in p]


def _gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list:
    a, b = _trim(list(p)), _trim(list(q))
    while b:
        b = _monic(b)
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a) if a else []


def _deriv(p: Sequence[Fraction]) -> list:
    return _trim([i * p[i] for i in range(1, len(p))])


def _mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _exact(p: Sequence[Fraction], q: Sequence[Fraction]) -> list:
    quot, rem = _divmod(p, q)
    if rem:
        raise DivisibilityError("division leaves a remainder")
    return _trim(quot)


# -- rational roots (p-adic lifting, no floating point) ---------------------


def _primitive_int(p: Sequence[Fraction]) -> list:
    den = functools.reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = functools.reduce(math.gcd, ints, 0)
    return [c // g for c in ints]


def _eval_mod(p: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % m
    return acc


def _trim_mod(q: list) -> list:
    while q and q[-1] == 0:
        q.pop()
    return q


def _squarefree_mod(p: Sequence[int], prime: int) -> bool:
    """True when ``p`` keeps its degree mod ``prime`` and stays squarefree there."""
    f = _trim_mod([c % prime for c in p])
    if len(f) != len(p):
        return False
    df = _trim_mod([(i * f[i]) % prime for i in range(1, len(f))])
    while df:
        inv = pow(df[-1], -1, prime)
        r = list(f)
        for k in range(len(r) - len(df), -1, -1):
            c = (r[k + len(df) - 1] * inv) % prime
            if c:
                for j, d in enumerate(df):
                    r[k + j] = (r[k + j] - c * d) % prime
        f, df = df, _trim_mod(r[: len(df) - 1])
    return len(f) == 1


def _small_primes():
    n = 3
    while True:
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            yield n
        n += 2


def _reconstruct(x: int, m: int, bound: int):
    """Find ``u / v`` with ``u == v * x (mod m)`` and ``|u|, v <= bound``."""
    r0, r1 = m, x % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def rational_roots(p: Sequence[Fraction]) -> list:
    """Rational roots of a squarefree univariate polynomial (low degree first)."""
    p = _trim(list(p))
    roots = []
    if len(p) <= 1:
        return roots
    if p[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(p) if c)
        p = p[k:]
    if len(p) == 2:
        roots.append(-p[0] / p[1])
        return sorted(roots)
    if len(p) < 2:
        return sorted(roots)
    ints = _primitive_int(p)
    lead, const = abs(ints[-1]), abs(ints[0])
    for prime in _small_primes():
        if ints[-1] % prime and _squarefree_mod(ints, prime):
            break
    deriv = [i * ints[i] for i in range(1, len(ints))]
    # a root u/v in lowest terms has |u| | const and v | lead
    bound = max(lead, const)
    target = 2 * bound * bound
    for x in range(prime):
        if _eval_mod(ints, x, prime):
            continue
        m = prime
        while m <= target:
            m = m * m
            fx = _eval_mod(ints, x, m)
            dfx = _eval_mod(deriv, x, m)
            x = (x - fx * pow(dfx, -1, m)) % m
        cand = _reconstruct(x, m, bound)
        if cand is not None and not _horner(p, cand):
            roots.append(cand)
    return sorted(set(roots))


def _horner(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def split_rational(f: BinaryForm) -> list:
    """Split a squarefree form into its rational linear factors and the
    (possibly empty) remainder without rational roots."""
    out = []
    rest = f
    if rest.degree and rest.t1_order():
        t1 = BinaryForm.linear(None)
        out.append(t1)
        rest = exact_div(rest, t1)
    for r in rational_roots(rest._finite()):
        lin = BinaryForm.linear(r)
        out.append(lin)
        rest = exact_div(rest, lin)
    if rest.degree:
        out.append(rest.normalized())
    return out


# -- binary forms ----------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in ``T0, T1`` with exact rational coefficients."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeError(f"negative degree {self.degree}")
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise DegreeError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike]) -> "BinaryForm":
        coeffs = tuple(coeffs)
        return cls(len(coeffs) - 1, coeffs)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def constant(cls, c: RationalLike = 1) -> "BinaryForm":
        return cls(0, (c,))

    @classmethod
    def monomial(cls, i: int, j: int, c: RationalLike = 1) -> "BinaryForm":
        """``c * T0**i * T1**j``."""
        coeffs = [0] * (i + j + 1)
        coeffs[i] = c
        return cls(i + j, coeffs)

    @classmethod
    def linear(cls, root: RationalLike | None) -> "BinaryForm":
        """Normalised linear form vanishing at ``[root, 1]``; ``None`` is infinity."""
        if root is None:
            return cls(1, (1, 0))
        return cls(1, (-as_rational(root), 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_constant(self) -> bool:
        return self.degree == 0

    def __repr__(self):
        return f"BinaryForm({self})"

    def __str__(self):
        terms = []
        d = self.degree
        for i in range(d, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "*".join(
                s for s in (_pow("T0", i), _pow("T1", d - i)) if s
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def sort_key(self):
        return (self.degree, self.coeffs)

    def evaluate(self, t0: RationalLike, t1: RationalLike) -> Fraction:
        t0, t1 = as_rational(t0), as_rational(t1)
        d = self.degree
        return sum(
            (c * t0**i * t1 ** (d - i) for i, c in enumerate(self.coeffs) if c),
            Fraction(0),
        )

    def scale(self, c: RationalLike) -> "BinaryForm":
        c = as_rational(c)
        return BinaryForm(self.degree, tuple(c * x for x in self.coeffs))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n)

    # dehomogenisation
    def _finite(self) -> list:
        return _trim(list(self.coeffs))

    def t1_order(self) -> int:
        """Multiplicity of ``T1`` (vanishing order at ``[1, 0]``)."""
        if self.is_zero():
            raise ZeroInputError("zero form has infinite order at every point")
        return self.degree - (len(self._finite()) - 1)

    def t0_order(self) -> int:
        if self.is_zero():
            raise ZeroInputError("zero form has infinite order at every point")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def normalized(self) -> "BinaryForm":
        """Scale so the highest-index nonzero coefficient is 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self._finite()[-1])


def _pow(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _from_finite(p: Sequence[Fraction], degree: int) -> BinaryForm:
    coeffs = list(p) + [Fraction(0)] * (degree + 1 - len(p))
    return BinaryForm(degree, tuple(coeffs))


def add(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    if f.degree != g.degree:
        raise DegreeError(f"cannot add forms of degree {f.degree} and {g.degree}")
    return BinaryForm(f.degree, tuple(a + b for a, b in zip(f.coeffs, g.coeffs)))


def mul(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    d = f.degree + g.degree
    out = [Fraction(0)] * (d + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[i + j] += a * b
    return BinaryForm(d, tuple(out))


def power(f: BinaryForm, n: int) -> BinaryForm:
    if n < 0:
        raise ValueError("negative exponent")
    result = BinaryForm.constant(1)
    base = f
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def product(forms: Iterable[BinaryForm]) -> BinaryForm:
    return functools.reduce(mul, forms, BinaryForm.constant(1))


def gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Normalised gcd, including the common power of ``T1``."""
    if f.is_zero() and g.is_zero():
        raise ZeroInputError("gcd of two zero forms")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    finite = _gcd(f._finite(), g._finite())
    k = min(f.t1_order(), g.t1_order())
    return _from_finite(finite, len(finite) - 1 + k)


def exact_div(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    if g.is_zero():
        raise DivisibilityError("division by the zero form")
    d = f.degree - g.degree
    if d < 0:
        raise DivisibilityError(f"degree {g.degree} cannot divide degree {f.degree}")
    if f.is_zero():
        return BinaryForm.zero(d)
    if f.t1_order() < g.t1_order():
        raise DivisibilityError(f"{g} does not divide {f}")
    q = _exact(f._finite(), g._finite())
    return _from_finite(q, d)


def divides(g: BinaryForm, f: BinaryForm) -> bool:
    try:
        exact_div(f, g)
    except DivisibilityError:
        return False
    return True


def multiplicity(p: BinaryForm, f: BinaryForm) -> int:
    """Largest ``m`` with ``p**m`` dividing ``f``."""
    if p.is_constant() or p.is_zero():
        raise ValueError("multiplicity needs a nonconstant form")
    if f.is_zero():
        raise ZeroInputError("vanishing order of the zero form is infinite")
    m = 0
    while f.degree >= p.degree:
        try:
            f = exact_div(f, p)
        except DivisibilityError:
            break
        m += 1
    return m


def order(p: BinaryForm, f: BinaryForm):
    """Like :func:`multiplicity` but returns ``INFINITE`` for the zero form."""
    return INFINITE if f.is_zero() else multiplicity(p, f)


def derivative_t0(f: BinaryForm) -> BinaryForm:
    """Partial derivative in ``T0`` (a form of degree ``d - 1``)."""
    if f.degree == 0:
        return BinaryForm.zero(0)
    return BinaryForm(f.degree - 1, tuple(i * f.coeffs[i] for i in range(1, f.degree + 1)))


def is_squarefree(f: BinaryForm) -> bool:
    if f.is_zero():
        return False
    if f.t1_order() > 1:
        return False
    p = f._finite()
    return len(_gcd(p, _deriv(p))) <= 1


def _yun(p: list) -> list:
    """Yun's algorithm for a univariate polynomial of positive degree."""
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _exact(p, a)
    c = _exact(dp, a)
    d = _trim([x - y for x, y in zip(c + [0] * len(b), _deriv(b) + [0] * len(c))])
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        b = _exact(b, a)
        c = _exact(d, a)
        d = _trim([x - y for x, y in zip(c + [0] * len(b), _deriv(b) + [0] * len(c))])
        if len(a) > 1:
            out.append((_monic(a), i))
        i += 1
    return out


def squarefree_decompose(f: BinaryForm) -> list:
    """``[(f_i, m_i), ...]`` with ``f = c * prod(f_i**m_i)``, ``m_i`` increasing."""
    if f.is_zero():
        raise ZeroInputError("squarefree decomposition of the zero form")
    p = f._finite()
    layers = {m: _from_finite(q, len(q) - 1) for q, m in _yun(p)} if len(p) > 1 else {}
    k = f.t1_order()
    if k:
        t1 = BinaryForm.linear(None)
        layers[k] = mul(layers[k], t1) if k in layers else t1
    return [(layers[m].normalized(), m) for m in sorted(layers)]


def content(f: BinaryForm, layers: Sequence[tuple]) -> Fraction:
    """The constant ``c`` left over after dividing ``f`` by its layers."""
    rest = f
    for g, m in layers:
        rest = exact_div(rest, power(g, m))
    return rest.coeffs[0]


def substitute(f: BinaryForm, matrix) -> BinaryForm:
    """``f(a*T0 + b*T1, c*T0 + d*T1)`` for ``matrix = ((a, b), (c, d))``."""
    (a, b), (c, d) = [[as_rational(x) for x in row] for row in matrix]
    u = BinaryForm(1, (b, a))
    v = BinaryForm(1, (d, c))
    n = f.degree
    u_pows = [BinaryForm.constant(1)]
    v_pows = [BinaryForm.constant(1)]
    for _ in range(n):
        u_pows.append(mul(u_pows[-1], u))
        v_pows.append(mul(v_pows[-1], v))
    out = BinaryForm.zero(n)
    for i, coeff in enumerate(f.coeffs):
        if coeff:
            out = add(out, mul(u_pows[i], v_pows[n - i]).scale(coeff))
    return out


# -- places ----------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """Squarefree normalised form whose roots share one vanishing profile.

    ``profile`` is ``(vA, vB, vD)``; entries are ints or ``INFINITE``.
    """

    form: BinaryForm
    profile: tuple

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def v_a(self):
        return self.profile[0]

    @property
    def v_b(self):
        return self.profile[1]

    @property
    def v_disc(self):
        return self.profile[2]


def weierstrass_discriminant(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """``4*A**3 + 27*B**2``."""
    return add(power(a, 3).scale(4), power(b, 2).scale(27))


def _refine(pieces: list, layers: list, slot: int) -> list:
    """Split each ``(form, profile)`` piece along ``layers`` and record the layer
    multiplicity in ``profile[slot]`` (0 where no layer meets the piece)."""
    out = []
    for form, prof in pieces:
        rest = form
        for layer, m in layers:
            if rest.degree == 0:
                break
            common = gcd(rest, layer)
            if common.degree == 0:
                continue
            out.append((common, prof[:slot] + (m,) + prof[slot + 1:]))
            rest = exact_div(rest, common)
        if rest.degree > 0:
            out.append((rest.normalized(), prof[:slot] + (0,) + prof[slot + 1:]))
    return out


def place_decompose(a: BinaryForm, b: BinaryForm) -> list:
    """Places covering the singular locus of the Weierstrass data ``(A, B)``.

    Roots of the discriminant when it is nonzero, otherwise roots of ``A``.
    Sorted by :meth:`BinaryForm.sort_key`.
    """
    if a.is_zero() and b.is_zero():
        raise ZeroInputError("A and B are both identically zero")
    disc = weierstrass_discriminant(a, b)
    if disc.is_zero():
        # 4A^3 = -27B^2, so A and B are both nonzero here.
        pieces = [(g, (m, 0, INFINITE)) for g, m in squarefree_decompose(a)]
    else:
        pieces = [(g, (0, 0, m)) for g, m in squarefree_decompose(disc)]
        pieces = _refine(pieces, [] if a.is_zero() else squarefree_decompose(a), 0)
    pieces = _refine(pieces, [] if b.is_zero() else squarefree_decompose(b), 1)
    if a.is_zero():
        pieces = [(g, (INFINITE,) + prof[1:]) for g, prof in pieces]
    places = [Place(h, prof) for g, prof in pieces for h in split_rational(g)]
    return sorted(places, key=lambda p: p.form.sort_key())
