"""Residuals eps_n = q_n*alpha - p_n and their sine probes.

For alpha = pi^2 the probe evaluates |sin(pi^3 * q_n)| directly (full
argument reduction at magnitude pi^3 * q_n) and compares it with the
reduced form |sin(pi * eps_n)|; the two enclose the same real number
because p_n shifts the argument by an integer multiple of pi.  The
envelope check replaces the asymptotic two-sided sine bound with the
explicit sharp constants 2/pi and 1, valid on [-pi/2, pi/2].
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal
from fractions import Fraction

from .convergents import Convergent
from .errors import PrecisionError
from .measure import mu_n
from .reals import (
    CertifiedReal,
    ConstantSpec,
    PiPower,
    PrecisionBudget,
    eval_constant,
    exact_value,
    pi_interval,
    sin_certified,
)


@dataclass(frozen=True)
class ProbeRow:
    """Residual and sine-probe enclosures for one convergent.

    ``sin_direct`` is present only for pi^2 (the direct form needs the
    pi^3 argument); bound flags stay None until ``bound_check`` fills
    them from the successor convergent.
    """

    display_n: int
    epsilon: CertifiedReal
    abs_epsilon: CertifiedReal
    sin_direct: CertifiedReal | None
    sin_reduced: CertifiedReal
    sin_unscaled: CertifiedReal
    lower_bound_ok: bool | None = None
    upper_bound_ok: bool | None = None
    envelope_ok: bool | None = None


@dataclass(frozen=True)
class BoundReport:
    """Certified two-sided residual bound flags, with the empirical mu."""

    display_n: int
    lower_bound_ok: bool
    upper_bound_ok: bool
    mu: Decimal | None


def residual(alpha: ConstantSpec, conv: Convergent,
             budget: PrecisionBudget) -> CertifiedReal:
    """Enclosure of q*alpha - p with width <= q * 10^-digits.

    Raises PrecisionError when the enclosure straddles zero (except for
    the exact-zero residual of a rational constant).
    """
    enclosure = eval_constant(alpha, budget)
    eps = enclosure * conv.q - conv.p
    if eps.straddles_zero():
        raise PrecisionError(
            f"residual for {conv.p}/{conv.q} straddles zero at "
            f"{budget.digits} digits"
        )
    return eps


def _residual_escalating(alpha: ConstantSpec, conv: Convergent,
                         budget: PrecisionBudget) -> CertifiedReal:
    attempt = budget
    while True:
        try:
            return residual(alpha, conv, attempt)
        except PrecisionError:
            attempt = attempt.escalated()


def sine_probe(alpha: ConstantSpec, conv: Convergent,
               budget: PrecisionBudget) -> ProbeRow:
    """Probe row for one convergent; precision escalates on the residual."""
    # the residual loses ~log10(q) digits to the q*alpha product, so the
    # enclosure of alpha gets them back before the sine sees the result
    q_digits = len(str(conv.q))
    inner = PrecisionBudget(budget.digits + q_digits + 4, budget.guard, budget.cap)
    eps = _residual_escalating(alpha, conv, inner)
    abs_eps = abs(eps)

    scale = budget.working + 8
    pi = pi_interval(scale)
    sin_reduced = abs(sin_certified(pi * eps, budget))
    sin_unscaled = abs(sin_certified(eps, budget))

    sin_direct = None
    if alpha == PiPower(2, 1):
        pi_cubed = pi_interval(scale + q_digits)
        pi_cubed = CertifiedReal(pi_cubed.lo ** 3, pi_cubed.hi ** 3)
        sin_direct = abs(sin_certified(pi_cubed * conv.q, budget))

    envelope = None
    half_pi_lo = pi.lo / 2
    if abs_eps.hi <= half_pi_lo:
        envelope = envelope_check(eps)
    return ProbeRow(conv.n + 1, eps, abs_eps, sin_direct, sin_reduced,
                    sin_unscaled, envelope_ok=envelope)


def envelope_check(z: CertifiedReal, budget: PrecisionBudget | None = None) -> bool:
    """Certify (2/pi)|z| <= |sin z| <= |z| over the enclosure.

    Valid on [-pi/2, pi/2], where both bounds are the classical concavity
    estimates with sharp constants (equalities at 0 and pi/2).  Raises
    PrecisionError if z extends beyond pi/2 by more than its own width,
    so an enclosure of the sharp point itself is accepted.  Returns False
    only on a certified violation, which cannot occur inside the domain.
    """
    if z.is_zero():
        return True
    if budget is None:
        # match the input's own resolution; sine will not accept a budget
        # finer than the enclosure it is given
        width = z.width
        needed = 30 if width == 0 else max(30, -_floor_log10(width) - 2)
        budget = PrecisionBudget(needed)
    scale = budget.working + 8
    pi = pi_interval(scale)
    abs_z = abs(z)
    slack = abs_z.width + Fraction(4, 10 ** scale)
    if abs_z.hi > pi.hi / 2 + slack:
        raise PrecisionError("envelope constants are only valid up to pi/2")

    sin_abs = abs(sin_certified(z, budget))
    scaled = abs_z * CertifiedReal(Fraction(2) / pi.hi, Fraction(2) / pi.lo)
    # certified violation tests; both inequalities are theorems on the domain
    if scaled.lo > sin_abs.hi:
        return False
    if sin_abs.lo > abs_z.hi:
        return False
    return True


def _floor_log10(x: Fraction) -> int:
    if x <= 0:
        raise ValueError("log10 of non-positive width")
    digits = len(str(x.numerator)) - len(str(x.denominator))
    # refine the digit-count estimate to an exact floor
    while 10 ** digits > x:
        digits -= 1
    while 10 ** (digits + 1) <= x:
        digits += 1
    return digits


def bound_check(alpha: ConstantSpec, rows: list[ProbeRow],
                convs: list[Convergent],
                budget: PrecisionBudget | None = None) -> list[BoundReport]:
    """Certified classical bounds 1/(q_n + q_n+1) < |eps_n| < 1/q_n+1.

    ``convs[i]`` must be the convergent of ``rows[i]`` and each checked
    row needs its successor in ``convs``; the upper bound implies
    |alpha - p/q| < 1/q^2.  The empirical mu_n rides along so the
    exponent hypothesis can be inspected next to the certified flags.
    """
    budget = budget or PrecisionBudget(60)
    if len(convs) < len(rows) + 1:
        raise ValueError("need the successor convergent for every checked row")
    reports: list[BoundReport] = []
    for i, row in enumerate(rows):
        cur, nxt = convs[i], convs[i + 1]
        if cur.n + 1 != row.display_n:
            raise ValueError("rows and convergents are misaligned")
        abs_eps = row.abs_epsilon
        upper = abs_eps.certainly_less_than(Fraction(1, nxt.q))
        lower = abs_eps.certainly_greater_than(Fraction(1, cur.q + nxt.q))
        mu = None
        if cur.q > 1 and not abs_eps.is_zero():
            attempt = budget
            while True:
                try:
                    mu = mu_n(alpha, cur, attempt)
                    break
                except PrecisionError:
                    attempt = attempt.escalated()
        reports.append(BoundReport(row.display_n, lower, upper, mu))
    return reports


def probe_table(alpha: ConstantSpec, convs: list[Convergent],
                budget: PrecisionBudget | None = None) -> list[ProbeRow]:
    """Probe rows for convs[:-1], bound flags filled from each successor."""
    budget = budget or PrecisionBudget(60)
    if len(convs) < 2:
        raise ValueError("need at least two convergents")
    rows = [sine_probe(alpha, c, budget) for c in convs[:-1]]
    reports = bound_check(alpha, rows, convs, budget)
    return [
        replace(row, lower_bound_ok=rep.lower_bound_ok,
                upper_bound_ok=rep.upper_bound_ok)
        for row, rep in zip(rows, reports)
    ]
