"""Certified continued-fraction expansion of constants.

Two routes: interval floor extraction with cross-precision agreement for
arbitrary constants, and the exact integer (P, Q) recurrence for
quadratic surds (no rounding anywhere on that path).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import PrecisionError
from .reals import (
    ConstantSpec,
    PrecisionBudget,
    Surd,
    eval_constant,
    exact_value,
)


@dataclass(frozen=True)
class PartialQuotients:
    """A certified prefix [a_0; a_1, a_2, ...] of an expansion.

    ``terminated`` marks exact rational inputs whose expansion is complete
    (canonical form, last quotient >= 2 when longer than one term).
    """

    terms: tuple[int, ...]
    certified_count: int
    source: ConstantSpec | None = None
    terminated: bool = False

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty expansion")
        if not 0 <= self.certified_count <= len(self.terms):
            raise ValueError("certified_count out of range")
        if any(a < 1 for a in self.terms[1:]):
            raise ValueError("partial quotients after a_0 must be >= 1")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


@dataclass(frozen=True)
class SurdExpansion:
    """Exact surd expansion with its eventual-period descriptor."""

    quotients: PartialQuotients
    preperiod: int
    period: int

    @property
    def period_terms(self) -> tuple[int, ...]:
        return self.quotients.terms[self.preperiod:self.preperiod + self.period]


# ---------------------------------------------------------------------------
# expansion via certified interval floors
# ---------------------------------------------------------------------------

def _rational_expansion(value: Fraction) -> list[int]:
    # plain Euclid; naturally canonical (last quotient >= 2 when len > 1)
    terms = []
    num, den = value.numerator, value.denominator
    while den:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    return terms


def _floor_run(spec: ConstantSpec, max_terms: int, scale: int,
               budget: PrecisionBudget) -> list[int]:
    """Quotients extracted at one working precision.

    Stops at the first floor the interval cannot decide (both endpoints
    must share it) or once the leftover fraction may touch zero.
    """
    x = eval_constant(spec, PrecisionBudget(scale, budget.guard, budget.cap))
    terms: list[int] = []
    while len(terms) < max_terms:
        lo_floor, hi_floor = x.floor_pair()
        if lo_floor != hi_floor:
            break
        terms.append(lo_floor)
        frac = x - lo_floor
        if frac.lo <= 0:
            break
        x = frac.reciprocal().outward(scale)
    return terms


def _certified_prefix(spec: ConstantSpec, want_terms: int, working: int,
                      budget: PrecisionBudget) -> list[int]:
    """Common quotient prefix of runs at ``working`` and ``working + 2*guard``."""
    step = max(2 * budget.guard, 2)
    first = _floor_run(spec, want_terms, working, budget)
    second = _floor_run(spec, want_terms, working + step, budget)
    prefix: list[int] = []
    for a, b in zip(first, second):
        if a != b:
            break
        prefix.append(a)
    return prefix


def expand(spec: ConstantSpec, want_terms: int,
           budget: PrecisionBudget | None = None) -> PartialQuotients:
    """At least ``want_terms`` certified quotients, escalating precision.

    Exact rationals return their full terminating expansion instead
    (possibly shorter than requested).  Raises PrecisionError with the
    achieved ``certified_count`` if the cap is hit first.
    """
    if want_terms < 1:
        raise ValueError("want_terms must be >= 1")
    budget = budget or PrecisionBudget(60)

    exact = exact_value(spec)
    if exact is not None:
        terms = _rational_expansion(exact)
        return PartialQuotients(tuple(terms), len(terms), spec, terminated=True)

    step = max(2 * budget.guard, 2)
    working = budget.working
    best: list[int] = []
    while True:
        capped = working + step + budget.guard > budget.cap
        if not capped:
            try:
                prefix = _certified_prefix(spec, want_terms, working, budget)
            except PrecisionError:
                capped = True
        if capped:
            raise PrecisionError(
                f"certified only {len(best)} of {want_terms} quotients "
                f"before hitting the precision cap",
                certified_count=len(best),
            )
        if len(prefix) > len(best):
            best = prefix
        if len(best) >= want_terms:
            return PartialQuotients(tuple(best), len(best), spec)
        working *= 2


def certify(spec: ConstantSpec, want_terms: int,
            budget: PrecisionBudget | None = None) -> int:
    """Length of the quotient prefix certified at this budget alone.

    One agreement pass at (working, working + 2*guard); no escalation.
    Exact rationals certify their whole terminating expansion.
    """
    if want_terms < 1:
        raise ValueError("want_terms must be >= 1")
    budget = budget or PrecisionBudget(60)
    exact = exact_value(spec)
    if exact is not None:
        return len(_rational_expansion(exact))
    step = max(2 * budget.guard, 2)
    if budget.working + step + budget.guard > budget.cap:
        raise PrecisionError("certification pass does not fit under the cap")
    return len(_certified_prefix(spec, want_terms, budget.working, budget))


# ---------------------------------------------------------------------------
# exact periodic expansion for quadratic surds
# ---------------------------------------------------------------------------

def surd_expand(spec: Surd, want_terms: int) -> SurdExpansion:
    """Expansion of (a + b*sqrt(d))/c by the integer (P, Q) recurrence.

    All terms are exact, hence certified; the period is detected by
    repetition of the recurrence state.
    """
    if not isinstance(spec, Surd):
        raise TypeError("surd_expand requires a Surd constant")
    if want_terms < 1:
        raise ValueError("want_terms must be >= 1")

    # normalise to (P + sqrt(D)) / Q with Q | (D - P^2)
    if spec.b > 0:
        p, q, d = spec.a, spec.c, spec.d * spec.b * spec.b
    else:
        p, q, d = -spec.a, -spec.c, spec.d * spec.b * spec.b
    if (d - p * p) % q:
        p, d, q = p * abs(q), d * q * q, q * abs(q)

    sqrt_d = isqrt(d)
    terms: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    preperiod = period = -1
    while period < 0 or len(terms) < want_terms:
        state = (p, q)
        if period < 0:
            if state in seen:
                preperiod = seen[state]
                period = len(terms) - preperiod
            else:
                seen[state] = len(terms)
        if period > 0 and len(terms) >= want_terms:
            break
        a = (p + sqrt_d) // q if q > 0 else (p + sqrt_d + 1) // q
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q

    quotients = PartialQuotients(tuple(terms), len(terms), spec)
    return SurdExpansion(quotients, preperiod, period)
