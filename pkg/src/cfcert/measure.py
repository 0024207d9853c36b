"""Approximate irrationality measure mu_n and the q^(mu_n - 2) column.

mu_n(alpha) = -log|alpha - p_n/q_n| / log q_n, certified from interval
enclosures.  Displayed mu_n is the ceiling at six decimals, i.e. the
least six-decimal exponent mu with |alpha - p/q| >= 1/q^mu.  The final
column q^(mu_n - 2) uses the displayed mu_n and rounds half-to-even.

mu_n ~ 2 for the convergents of almost every real number; a finite table
of mu_n values is evidence about the early convergents only and proves
nothing about the infimum mu(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .cf import expand
from .convergents import Convergent, convergents_iter
from .errors import PrecisionError
from .reals import (
    CertifiedReal,
    ConstantSpec,
    PrecisionBudget,
    eval_constant,
    exact_value,
    exp_certified,
    ln_certified,
)

_PLACES = 6
_SCALE = 10 ** _PLACES
# certification threshold: half an ulp of the displayed six decimals
_MU_WIDTH = Fraction(5, 10 ** (_PLACES + 1))


def _round_fraction(x: Fraction, mode: str) -> int:
    """x * 10^6 rounded to an integer: 'ceil' or 'half_even'."""
    t = x * _SCALE
    q, r = divmod(t.numerator, t.denominator)
    if mode == "ceil":
        return q + (1 if r else 0)
    if mode == "half_even":
        if 2 * r > t.denominator or (2 * r == t.denominator and q % 2):
            return q + 1
        return q
    raise ValueError(f"unknown rounding mode {mode!r}")


def _as_decimal(scaled: int) -> Decimal:
    return Decimal(scaled).scaleb(-_PLACES)


@dataclass(frozen=True)
class MeasureRow:
    """One table row: 1-based display index, exact p/q, displayed columns.

    ``mu`` is absent for q = 1 (log q = 0) and for a residual that is
    exactly zero (rational constant hit exactly); ``lagrange`` is then
    1.000000 for q = 1 and absent otherwise.
    """

    display_n: int
    p: int
    q: int
    mu: Decimal | None
    lagrange: Decimal | None


def _error_interval(alpha: ConstantSpec, conv: Convergent,
                    budget: PrecisionBudget) -> CertifiedReal:
    enclosure = eval_constant(alpha, budget)
    return abs(enclosure - Fraction(conv.p, conv.q))


def mu_n(alpha: ConstantSpec, conv: Convergent,
         budget: PrecisionBudget) -> Decimal | None:
    """Certified -log|alpha - p/q| / log q, ceiled to six decimals.

    None when q = 1.  Raises PrecisionError if the budget cannot separate
    the error term from zero or pin all six decimals; callers escalate.
    """
    if conv.q == 1:
        return None
    err = _error_interval(alpha, conv, budget)
    if err.hi == 0:
        raise ZeroDivisionError("exact convergent: approximation error is zero")
    if not err.certainly_positive():
        raise PrecisionError(
            f"error interval for p/q={conv.p}/{conv.q} cannot exclude zero "
            f"at {budget.digits} digits"
        )
    scale = budget.working
    mu = -ln_certified(err, scale) / ln_certified(CertifiedReal.point(conv.q), scale)
    if mu.width >= _MU_WIDTH:
        raise PrecisionError("mu enclosure wider than half a display ulp")
    lo = _round_fraction(mu.lo, "ceil")
    hi = _round_fraction(mu.hi, "ceil")
    if lo != hi:
        raise PrecisionError("mu enclosure straddles a display boundary")
    return _as_decimal(lo)


def lagrange(q: int, mu) -> Decimal:
    """q^(mu - 2) at six decimals (half-even); exactly 1.000000 for q = 1."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return _as_decimal(_SCALE)
    exponent = Fraction(str(mu)) - 2
    scale = 40
    while True:
        lnq = ln_certified(CertifiedReal.point(q), scale)
        value = exp_certified(
            CertifiedReal(exponent * lnq.lo, exponent * lnq.hi)
            if exponent >= 0
            else CertifiedReal(exponent * lnq.hi, exponent * lnq.lo),
            scale,
        )
        lo = _round_fraction(value.lo, "half_even")
        hi = _round_fraction(value.hi, "half_even")
        if lo == hi:
            return _as_decimal(lo)
        scale *= 2
        if scale > 10_000:
            raise PrecisionError("lagrange value sits on a rounding boundary")


def measure_table(alpha: ConstantSpec, rows: int,
                  budget: PrecisionBudget | None = None) -> list[MeasureRow]:
    """Rows 1..rows of the measure table, escalating precision as needed.

    Display index n is the 0-based convergent index plus one.  For exact
    rational constants the table stops at the terminating expansion.
    """
    if rows < 1:
        raise ValueError("rows must be >= 1")
    budget = budget or PrecisionBudget(60)

    quotients = expand(alpha, rows, budget)
    upto = min(rows, quotients.certified_count) - 1
    convs = convergents_iter(quotients, upto)
    is_exact = exact_value(alpha) is not None

    out: list[MeasureRow] = []
    for conv in convs:
        if conv.q == 1:
            out.append(MeasureRow(conv.n + 1, conv.p, conv.q, None,
                                  _as_decimal(_SCALE)))
            continue
        if is_exact and quotients.terminated and conv.n == len(quotients.terms) - 1:
            # final convergent of a rational equals the value exactly
            out.append(MeasureRow(conv.n + 1, conv.p, conv.q, None, None))
            continue
        attempt = budget
        while True:
            try:
                mu = mu_n(alpha, conv, attempt)
                break
            except PrecisionError:
                attempt = attempt.escalated()
        out.append(MeasureRow(conv.n + 1, conv.p, conv.q, mu,
                              lagrange(conv.q, mu)))
    return out
