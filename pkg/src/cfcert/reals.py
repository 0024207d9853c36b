"""Certified real arithmetic on directed-rounded rational intervals.

Every value is an enclosure ``[lo, hi]`` with exact rational endpoints,
kept on a decimal grid (scaled integers) by all internal routines.  The
transcendental evaluations (pi, sin, ln, exp, integer roots) run in
integer fixed point with explicit truncation bounds, so the returned
interval is guaranteed to contain the mathematical value.  No hardware
floats appear anywhere on the certified path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import PrecisionError

DEFAULT_PRECISION_CAP = 1_000_000

_ZERO = Fraction(0)
_DECIMAL_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")


# ---------------------------------------------------------------------------
# precision budget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionBudget:
    """Requested certified decimal digits plus guard digits for headroom.

    ``cap`` bounds the working precision any escalation loop may reach;
    exceeding it raises :class:`PrecisionError` rather than exhausting
    memory.
    """

    digits: int
    guard: int = 10
    cap: int = DEFAULT_PRECISION_CAP

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.guard < 0:
            raise ValueError("guard must be >= 0")
        if self.cap < self.digits + self.guard:
            raise ValueError("cap smaller than digits + guard")

    @property
    def working(self) -> int:
        return self.digits + self.guard

    def escalated(self, factor: int = 2) -> "PrecisionBudget":
        """Budget with ``digits`` scaled up, preserving guard and cap."""
        new_digits = self.digits * factor
        if new_digits + self.guard > self.cap:
            raise PrecisionError(
                f"working precision {new_digits + self.guard} exceeds cap {self.cap}"
            )
        return PrecisionBudget(new_digits, self.guard, self.cap)


# ---------------------------------------------------------------------------
# certified interval
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifiedReal:
    """Closed interval [lo, hi] guaranteed to contain the exact value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, value) -> "CertifiedReal":
        v = Fraction(value)
        return cls(v, v)

    @classmethod
    def from_fixed(cls, lo: int, hi: int, scale: int) -> "CertifiedReal":
        d = 10 ** scale
        return cls(Fraction(lo, d), Fraction(hi, d))

    # -- basic queries ------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        v = Fraction(value)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "CertifiedReal") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "CertifiedReal") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def straddles_zero(self) -> bool:
        return self.lo < 0 < self.hi

    def is_zero(self) -> bool:
        return self.lo == 0 == self.hi

    def certainly_positive(self) -> bool:
        return self.lo > 0

    def certainly_negative(self) -> bool:
        return self.hi < 0

    def certainly_less_than(self, value) -> bool:
        return self.hi < Fraction(value)

    def certainly_greater_than(self, value) -> bool:
        return self.lo > Fraction(value)

    # -- exact interval arithmetic -----------------------------------------

    def __add__(self, other) -> "CertifiedReal":
        o = _as_interval(other)
        return CertifiedReal(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "CertifiedReal":
        o = _as_interval(other)
        return CertifiedReal(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> "CertifiedReal":
        return _as_interval(other) - self

    def __neg__(self) -> "CertifiedReal":
        return CertifiedReal(-self.hi, -self.lo)

    def __mul__(self, other) -> "CertifiedReal":
        o = _as_interval(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedReal(min(products), max(products))

    __rmul__ = __mul__

    def __abs__(self) -> "CertifiedReal":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedReal(_ZERO, max(-self.lo, self.hi))

    def reciprocal(self) -> "CertifiedReal":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return CertifiedReal(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "CertifiedReal":
        return self * _as_interval(other).reciprocal()

    def outward(self, scale: int) -> "CertifiedReal":
        """Round endpoints onto the 10^-scale grid, away from the interior.

        Keeps denominators bounded so long pipelines stay cheap; always a
        superset of self.
        """
        d = 10 ** scale
        lo = (self.lo.numerator * d) // self.lo.denominator
        hi = -((-self.hi.numerator * d) // self.hi.denominator)
        return CertifiedReal(Fraction(lo, d), Fraction(hi, d))

    def floor_pair(self) -> tuple[int, int]:
        lo = self.lo.numerator // self.lo.denominator
        hi = self.hi.numerator // self.hi.denominator
        return lo, hi

    def __repr__(self) -> str:
        return f"CertifiedReal({self.lo}, {self.hi})"


def _as_interval(x) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    return CertifiedReal.point(x)


# ---------------------------------------------------------------------------
# constant specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiPower:
    """pi**(t/s) with t/s kept in lowest terms, s >= 1."""

    t: int
    s: int = 1

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("root index s must be >= 1")
        g = gcd(abs(self.t), self.s)
        if g > 1:
            object.__setattr__(self, "t", self.t // g)
            object.__setattr__(self, "s", self.s // g)

    def describe(self) -> str:
        return f"pi^{self.t}/{self.s}" if self.s != 1 else f"pi^{self.t}"


@dataclass(frozen=True)
class Surd:
    """Quadratic irrational (a + b*sqrt(d)) / c with d a non-square."""

    a: int
    b: int
    d: int
    c: int

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("surd denominator c must be nonzero")
        if self.b == 0:
            raise ValueError("surd coefficient b must be nonzero (value is rational)")
        if self.d < 2 or isqrt(self.d) ** 2 == self.d:
            raise ValueError(f"surd discriminant {self.d} is a perfect square")

    def describe(self) -> str:
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.c}"


@dataclass(frozen=True)
class DecimalLiteral:
    """Exact finite-decimal constant, e.g. "0.5"."""

    text: str

    def __post_init__(self):
        if not _DECIMAL_RE.match(self.text):
            raise ValueError(f"not a finite decimal literal: {self.text!r}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.text)

    def describe(self) -> str:
        return self.text


ConstantSpec = PiPower | Surd | DecimalLiteral


def exact_value(spec: ConstantSpec) -> Fraction | None:
    """The exact rational value of a spec, or None if it is irrational."""
    if isinstance(spec, DecimalLiteral):
        return spec.value
    if isinstance(spec, PiPower) and spec.t == 0:
        return Fraction(1)
    return None


# ---------------------------------------------------------------------------
# integer fixed-point helpers
#
# A "pair" (lo, hi) at scale S encloses x: lo <= x*10^S <= hi.
# ---------------------------------------------------------------------------

def _ceil_div(a: int, b: int) -> int:
    # b > 0
    return -((-a) // b)


def _fx_bounds(x: Fraction, scale: int) -> tuple[int, int]:
    t = x * 10 ** scale
    lo = t.numerator // t.denominator
    hi = lo if t.denominator == 1 else lo + 1
    return lo, hi


def _pair_mul(a: tuple[int, int], b: tuple[int, int], scale: int) -> tuple[int, int]:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    d = 10 ** scale
    return min(p) // d, _ceil_div(max(p), d)


def _pair_div_int(a: tuple[int, int], n: int) -> tuple[int, int]:
    # n > 0
    return a[0] // n, _ceil_div(a[1], n)


def _pair_rescale(a: tuple[int, int], from_scale: int, to_scale: int) -> tuple[int, int]:
    if to_scale >= from_scale:
        f = 10 ** (to_scale - from_scale)
        return a[0] * f, a[1] * f
    d = 10 ** (from_scale - to_scale)
    return a[0] // d, _ceil_div(a[1], d)


def _iroot(n: int, k: int) -> int:
    """Floor of the integer k-th root of n >= 0 (Newton iteration)."""
    if n < 0:
        raise ValueError("iroot of negative value")
    if n == 0 or k == 1:
        return n if k == 1 else 0
    if k == 2:
        return isqrt(n)
    x = 1 << (-(-n.bit_length() // k) + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


# -- alternating/positive integer series for the cached constants -----------

def _atan_inv_fx(m: int, scale: int) -> tuple[int, int]:
    """arctan(1/m) for integer m >= 2, alternating Gregory series."""
    s = 10 ** scale
    power = m
    m2 = m * m
    k = 0
    lo = hi = 0
    while True:
        term = s // ((2 * k + 1) * power)
        if term == 0:
            break
        if k % 2 == 0:
            lo += term
            hi += term + 1
        else:
            lo -= term + 1
            hi -= term
        power *= m2
        k += 1
    # remaining tail is below one ulp of the last computed magnitude
    return lo - 2, hi + 2


def _atanh_inv_fx(m: int, scale: int) -> tuple[int, int]:
    """atanh(1/m) for integer m >= 2, all-positive series."""
    s = 10 ** scale
    power = m
    m2 = m * m
    k = 0
    lo = hi = 0
    while True:
        term = s // ((2 * k + 1) * power)
        if term == 0:
            break
        lo += term
        hi += term + 1
        power *= m2
        k += 1
    # geometric tail: sum of omitted terms < (1 ulp) * m^2/(m^2-1) < 2 ulps
    return lo, hi + 2


@lru_cache(maxsize=128)
def _pi_fx(scale: int) -> tuple[int, int]:
    """Machin: pi = 16*arctan(1/5) - 4*arctan(1/239), directed rounding."""
    s = scale + 8
    a5 = _atan_inv_fx(5, s)
    a239 = _atan_inv_fx(239, s)
    lo = 16 * a5[0] - 4 * a239[1]
    hi = 16 * a5[1] - 4 * a239[0]
    return _pair_rescale((lo, hi), s, scale)


@lru_cache(maxsize=128)
def _ln10_fx(scale: int) -> tuple[int, int]:
    # ln 10 = 3 ln 2 + ln(5/4) = 6 atanh(1/3) + 2 atanh(1/9)
    s = scale + 8
    a3 = _atanh_inv_fx(3, s)
    a9 = _atanh_inv_fx(9, s)
    return _pair_rescale((6 * a3[0] + 2 * a9[0], 6 * a3[1] + 2 * a9[1]), s, scale)


@lru_cache(maxsize=128)
def _ln2_fx(scale: int) -> tuple[int, int]:
    s = scale + 8
    a3 = _atanh_inv_fx(3, s)
    return _pair_rescale((2 * a3[0], 2 * a3[1]), s, scale)


# -- Taylor series on fixed-point pairs --------------------------------------
#
# Each loop keeps the running term as a directed pair and stops once the
# term magnitude falls to a few ulps; the final widening covers both the
# truncation tail (ratio bounds documented per series) and the stalled
# rounding ulps of the stop threshold.

_STOP = 8
_SLACK = 64


def _sin_series_fx(t: tuple[int, int], scale: int) -> tuple[int, int]:
    """sin on a pair enclosing t, |t| <= 1.6 (term ratio <= 0.43)."""
    neg_t2 = _pair_mul(t, t, scale)
    neg_t2 = (-neg_t2[1], -neg_t2[0])
    term = t
    lo, hi = t
    k = 0
    while max(abs(term[0]), abs(term[1])) > _STOP:
        k += 1
        term = _pair_mul(term, neg_t2, scale)
        term = _pair_div_int(term, (2 * k) * (2 * k + 1))
        lo += term[0]
        hi += term[1]
    return lo - _SLACK, hi + _SLACK


def _exp_series_fx(t: tuple[int, int], scale: int) -> tuple[int, int]:
    """exp on a pair enclosing t, |t| <= 0.8 (term ratio <= 0.8)."""
    one = 10 ** scale
    term = (one, one)
    lo = hi = one
    k = 0
    while max(abs(term[0]), abs(term[1])) > _STOP:
        k += 1
        term = _pair_mul(term, t, scale)
        term = _pair_div_int(term, k)
        lo += term[0]
        hi += term[1]
    return lo - _SLACK, hi + _SLACK


def _atanh_series_fx(z: tuple[int, int], scale: int) -> tuple[int, int]:
    """atanh on a pair enclosing z, 0 <= z <= 0.7 (term ratio <= 0.49)."""
    z2 = _pair_mul(z, z, scale)
    power = z
    lo, hi = z
    k = 0
    while max(abs(power[0]), abs(power[1])) > _STOP:
        k += 1
        power = _pair_mul(power, z2, scale)
        term = _pair_div_int(power, 2 * k + 1)
        lo += term[0]
        hi += term[1]
    return lo - _SLACK, hi + _SLACK


# ---------------------------------------------------------------------------
# point evaluations built on the series
# ---------------------------------------------------------------------------

def _ln_point_fx(x: Fraction, scale: int) -> tuple[int, int]:
    """Natural log of an exact positive rational, as a directed pair."""
    if x <= 0:
        raise ValueError("ln of non-positive value")
    s = scale + 8
    # decimal shift so the mantissa sits in [0.5, 5): |z| <= 2/3 below
    k = len(str(x.numerator)) - len(str(x.denominator))
    m = x / Fraction(10) ** k
    if m < Fraction(1, 2):
        m *= 10
        k -= 1
    elif m >= 5:
        m /= 10
        k += 1
    z = (m - 1) / (m + 1)
    sign = 1
    if z < 0:
        z, sign = -z, -1
    at = _atanh_series_fx(_fx_bounds(z, s), s)
    if sign < 0:
        at = (-at[1], -at[0])
    l10 = _ln10_fx(s)
    kl = (k * l10[0], k * l10[1]) if k >= 0 else (k * l10[1], k * l10[0])
    return _pair_rescale((2 * at[0] + kl[0], 2 * at[1] + kl[1]), s, scale)


def _exp_point_fx(y: Fraction, scale: int) -> tuple[int, int]:
    """exp of an exact rational with |y| <= ~200, as a directed pair."""
    if abs(y) > 400:
        raise PrecisionError("exp argument out of supported range")
    s = scale + 12
    # y = j*ln2 + r with |r| <= 0.36 after round-to-nearest j
    j = int((y * 1_442_695 + Fraction(1, 2) * 1_000_000) // 1_000_000)
    l2 = _ln2_fx(s)
    r_lo = y - Fraction(j * l2[1] if j >= 0 else j * l2[0], 10 ** s)
    r_hi = y - Fraction(j * l2[0] if j >= 0 else j * l2[1], 10 ** s)
    pr = (_fx_bounds(r_lo, s)[0], _fx_bounds(r_hi, s)[1])
    e = _exp_series_fx(pr, s)
    if j >= 0:
        e = (e[0] * 2 ** j, e[1] * 2 ** j)
    else:
        d = 2 ** (-j)
        e = (e[0] // d, _ceil_div(e[1], d))
    return _pair_rescale(e, s, scale)


def _sqrt_int_fx(d: int, scale: int) -> tuple[int, int]:
    r = isqrt(d * 10 ** (2 * scale))
    return r, r + 1


def _root_point_fx(x: Fraction, k: int, scale: int) -> tuple[int, int]:
    """Floor/ceil pair for the k-th root of an exact positive rational."""
    if x <= 0:
        raise ValueError("root of non-positive value")
    n = (x.numerator * 10 ** (k * scale)) // x.denominator
    r = _iroot(n, k)
    return r, r + 2  # +2 absorbs the floor in n on top of the root rounding


# ---------------------------------------------------------------------------
# public constant evaluation
# ---------------------------------------------------------------------------

def pi_interval(scale: int) -> CertifiedReal:
    """Enclosure of pi with width below a few ulps at 10^-scale."""
    return CertifiedReal.from_fixed(*_pi_fx(scale), scale)


def eval_constant(spec: ConstantSpec, budget: PrecisionBudget) -> CertifiedReal:
    """Enclosure of the constant with width <= 10^-digits.

    Deterministic for a fixed (spec, budget).  Raises PrecisionError if
    the working precision needed would exceed the budget cap.
    """
    target = Fraction(1, 10 ** budget.digits)
    exact = exact_value(spec)
    if exact is not None:
        return CertifiedReal.point(exact)

    extra = 8
    if isinstance(spec, PiPower):
        extra += abs(spec.t)
    working = budget.working + extra
    while True:
        if working > budget.cap:
            raise PrecisionError(
                f"cannot evaluate {spec.describe()} to {budget.digits} digits "
                f"within precision cap {budget.cap}"
            )
        result = _eval_at(spec, working)
        if result.width <= target:
            return result
        working *= 2


def _eval_at(spec: ConstantSpec, scale: int) -> CertifiedReal:
    if isinstance(spec, PiPower):
        pi = pi_interval(scale)
        t = abs(spec.t)
        # positive base: endpoint powers are directed automatically
        powered = CertifiedReal(pi.lo ** t, pi.hi ** t).outward(scale)
        if spec.s > 1:
            lo = Fraction(_root_point_fx(powered.lo, spec.s, scale)[0], 10 ** scale)
            hi = Fraction(_root_point_fx(powered.hi, spec.s, scale)[1], 10 ** scale)
            powered = CertifiedReal(lo, hi)
        if spec.t < 0:
            powered = powered.reciprocal()
        return powered.outward(scale)
    if isinstance(spec, Surd):
        rt = CertifiedReal.from_fixed(*_sqrt_int_fx(spec.d, scale), scale)
        return ((Fraction(spec.a) + rt * spec.b) / Fraction(spec.c)).outward(scale)
    raise TypeError(f"unsupported constant spec: {spec!r}")


# ---------------------------------------------------------------------------
# certified sine with argument reduction
# ---------------------------------------------------------------------------

_SIN_DOMAIN = Fraction(8, 5)  # series validity bound, slightly above pi/2


def _sin_monotone(iv: CertifiedReal, scale: int) -> CertifiedReal:
    """Sine over an interval inside the increasing branch around 0.

    Endpoints may poke past +-pi/2 by a few ulps; the sine deficit there
    is quadratic in the overshoot and stays far below the series slack,
    so the endpoint rule remains an enclosure.
    """
    if not (-_SIN_DOMAIN <= iv.lo and iv.hi <= _SIN_DOMAIN):
        raise PrecisionError("sine argument outside reduced range")
    lo = _sin_series_fx(_fx_bounds(iv.lo, scale), scale)[0]
    hi = _sin_series_fx(_fx_bounds(iv.hi, scale), scale)[1]
    return CertifiedReal(Fraction(lo, 10 ** scale), Fraction(hi, 10 ** scale))


def sin_certified(x: CertifiedReal, budget: PrecisionBudget) -> CertifiedReal:
    """Enclosure of sin over x, reduced modulo 2*pi at full precision.

    The pi enclosure used for reduction carries enough digits that the
    reduction error is absorbed into the output interval.
    """
    if x.is_zero():
        return CertifiedReal.point(0)

    magnitude = max(abs(x.lo), abs(x.hi))
    mag_digits = len(str(int(magnitude))) if magnitude >= 1 else 1
    scale = budget.working + mag_digits + 8
    if scale > budget.cap:
        raise PrecisionError(
            f"sine argument magnitude needs working precision {scale} > cap"
        )
    if x.width > Fraction(20, 10 ** budget.digits):
        raise PrecisionError("input interval too wide to certify sine")

    pi = pi_interval(scale)
    two_pi = pi * 2
    k = round(x.midpoint / two_pi.midpoint)
    r = x - two_pi * k if k else x

    half_lo = pi.lo / 2
    half_hi = pi.hi / 2
    if -half_lo <= r.lo and r.hi <= half_lo:
        return _sin_monotone(r, scale)
    if r.lo >= half_hi:
        return _sin_monotone(pi - r, scale)
    if r.hi <= -half_hi:
        return -_sin_monotone(pi + r, scale)

    # straddles an extremum: exact +-1 on that side, endpoint sines on the other
    def endpoint_sine(e: Fraction) -> CertifiedReal:
        if e > half_lo:
            return _sin_monotone(pi - CertifiedReal.point(e), scale)
        if e < -half_lo:
            return -_sin_monotone(pi + CertifiedReal.point(e), scale)
        return _sin_monotone(CertifiedReal.point(e), scale)

    a = endpoint_sine(r.lo)
    b = endpoint_sine(r.hi)
    if r.midpoint > 0:
        return CertifiedReal(min(a.lo, b.lo), Fraction(1))
    return CertifiedReal(Fraction(-1), max(a.hi, b.hi))


# ---------------------------------------------------------------------------
# certified log/exp on intervals (used by the measure column)
# ---------------------------------------------------------------------------

def ln_certified(x: CertifiedReal, scale: int) -> CertifiedReal:
    """Enclosure of ln over a certainly-positive interval."""
    if not x.certainly_positive():
        raise PrecisionError("ln needs an interval certified positive")
    lo = _ln_point_fx(x.lo, scale)[0]
    hi = _ln_point_fx(x.hi, scale)[1]
    return CertifiedReal.from_fixed(lo, hi, scale)


def exp_certified(y: CertifiedReal, scale: int) -> CertifiedReal:
    """Enclosure of exp over an interval."""
    lo = _exp_point_fx(y.lo, scale)[0]
    hi = _exp_point_fx(y.hi, scale)[1]
    return CertifiedReal.from_fixed(lo, hi, scale)
