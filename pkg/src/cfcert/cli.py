"""Command-line frontend: expand, convergents, measure, probe, verify, bench.

Exit codes: 0 success, 1 domain error (uncertified terms, precision cap),
2 usage error.  All output except benchmark timings is deterministic for
a fixed configuration.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .cf import expand, surd_expand
from .convergents import (
    WorkCounter,
    check_determinant,
    convergents_fast,
    convergents_iter,
    convergents_matrix,
    final_convergent,
    telescoping_sum,
)
from .errors import PrecisionError
from .measure import measure_table
from .probe import probe_table
from .reals import (
    ConstantSpec,
    DecimalLiteral,
    PiPower,
    PrecisionBudget,
    Surd,
)

_ENGINES = ("iter", "matrix", "fast")
_BENCH_SIZES = (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5)


def parse_constant(token: str) -> ConstantSpec:
    """Constant syntax: pi, pi2, pi3, pi^t/s, sqrt:d, surd:a,b,d,c, lit:x, golden."""
    if token == "pi":
        return PiPower(1, 1)
    if token == "pi2":
        return PiPower(2, 1)
    if token == "pi3":
        return PiPower(3, 1)
    if token == "golden":
        return Surd(1, 1, 5, 2)
    if token.startswith("pi^"):
        body = token[3:]
        t, _, s = body.partition("/")
        return PiPower(int(t), int(s) if s else 1)
    if token.startswith("sqrt:"):
        return Surd(0, 1, int(token[5:]), 1)
    if token.startswith("surd:"):
        parts = token[5:].split(",")
        if len(parts) != 4:
            raise ValueError("surd takes four integers: surd:a,b,d,c")
        a, b, d, c = (int(x) for x in parts)
        return Surd(a, b, d, c)
    if token.startswith("lit:"):
        return DecimalLiteral(token[4:])
    raise ValueError(f"unknown constant {token!r}")


def _budget(args) -> PrecisionBudget:
    return PrecisionBudget(args.digits)


def _engine_fn(name: str):
    return {
        "iter": convergents_iter,
        "matrix": convergents_matrix,
    }[name]


def _print(out, line: str = "") -> None:
    out.write(line + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_expand(args, out) -> int:
    spec = parse_constant(args.constant)
    quotients = expand(spec, args.terms, _budget(args))
    shown = quotients.terms[:args.terms]
    if args.format == "csv":
        _print(out, "n,a")
        for i, a in enumerate(shown):
            _print(out, f"{i},{a}")
    else:
        _print(out, " ".join(str(a) for a in shown))
    return 0


def _cmd_convergents(args, out) -> int:
    spec = parse_constant(args.constant)
    quotients = expand(spec, args.terms, _budget(args))
    upto = min(args.terms, quotients.certified_count) - 1
    if args.engine == "fast":
        convs = [convergents_fast(quotients, upto)]
    else:
        convs = _engine_fn(args.engine)(quotients, upto)
    if args.format == "csv":
        _print(out, "n,p,q")
        for c in convs:
            _print(out, f"{c.n + 1},{c.p},{c.q}")
    else:
        for c in convs:
            _print(out, f"{c.p}/{c.q}")
    return 0


def _measure_text(rows, out) -> None:
    wp = max(len(str(r.p)) for r in rows)
    wq = max(len(str(r.q)) for r in rows)
    wn = len(str(rows[-1].display_n))
    header = (f"{'n':>{wn}}  {'p_n':>{wp}}  {'q_n':>{wq}}  "
              f"{'mu_n':>9}  {'q^(mu_n-2)':>12}")
    _print(out, header)
    for r in rows:
        mu = "" if r.mu is None else str(r.mu)
        lag = "" if r.lagrange is None else str(r.lagrange)
        _print(out, f"{r.display_n:>{wn}}  {r.p:>{wp}}  {r.q:>{wq}}  "
                    f"{mu:>9}  {lag:>12}")


def _cmd_measure(args, out) -> int:
    spec = parse_constant(args.constant)
    rows = measure_table(spec, args.terms, _budget(args))
    if args.format == "csv":
        _print(out, "n,p,q,mu,lagrange")
        for r in rows:
            mu = "" if r.mu is None else str(r.mu)
            lag = "" if r.lagrange is None else str(r.lagrange)
            _print(out, f"{r.display_n},{r.p},{r.q},{mu},{lag}")
    elif args.format == "plot":
        for r in rows:
            if r.mu is not None:
                _print(out, f"({r.display_n},{r.mu})")
    else:
        _measure_text(rows, out)
    return 0


def _cmd_probe(args, out) -> int:
    spec = parse_constant(args.constant)
    budget = _budget(args)
    quotients = expand(spec, args.terms, budget)
    upto = min(args.terms, quotients.certified_count) - 1
    convs = convergents_iter(quotients, upto)
    rows = probe_table(spec, convs, budget)

    def fmt(iv):
        return "" if iv is None else f"{float(iv.midpoint):.6e}"

    if args.format == "csv":
        _print(out, "n,epsilon,sin_direct,sin_reduced,sin_unscaled,"
                    "lower_ok,upper_ok,envelope_ok")
        for r in rows:
            _print(out, f"{r.display_n},{fmt(r.epsilon)},{fmt(r.sin_direct)},"
                        f"{fmt(r.sin_reduced)},{fmt(r.sin_unscaled)},"
                        f"{r.lower_bound_ok},{r.upper_bound_ok},{r.envelope_ok}")
    else:
        _print(out, f"{'n':>3}  {'epsilon':>14}  {'|sin(direct)|':>14}  "
                    f"{'|sin(pi*eps)|':>14}  {'|sin(eps)|':>14}  bounds  envelope")
        for r in rows:
            bounds = "ok" if (r.lower_bound_ok and r.upper_bound_ok) else "FAIL"
            env = {True: "ok", False: "FAIL", None: "-"}[r.envelope_ok]
            _print(out, f"{r.display_n:>3}  {fmt(r.epsilon):>14}  "
                        f"{fmt(r.sin_direct):>14}  {fmt(r.sin_reduced):>14}  "
                        f"{fmt(r.sin_unscaled):>14}  {bounds:>6}  {env}")
    return 0


def _cmd_verify(args, out) -> int:
    spec = parse_constant(args.constant)
    budget = _budget(args)
    quotients = expand(spec, args.terms, budget)
    n_avail = min(args.terms, quotients.certified_count)
    upto = n_avail - 1
    failures = 0

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if not ok:
            failures += 1
        suffix = f" ({detail})" if detail else ""
        _print(out, f"{name}: {'PASS' if ok else 'FAIL'}{suffix}")

    if quotients.terminated:
        _print(out, f"note: rational constant, expansion terminates after "
                    f"{len(quotients.terms)} terms")
    if isinstance(spec, Surd):
        sx = surd_expand(spec, n_avail)
        period = ",".join(str(a) for a in sx.period_terms)
        _print(out, f"note: surd period [{period}] after preperiod {sx.preperiod}")
        agree = sx.quotients.terms[:n_avail] == quotients.terms[:n_avail]
        report("surd exact/interval agreement", agree)

    convs = convergents_iter(quotients, upto)
    report("determinant identity", check_determinant(convs))

    tele_ok, tele_detail = True, ""
    for n in range(1, upto + 1):
        if telescoping_sum(quotients, n) != convs[n].value:
            tele_ok, tele_detail = False, f"first failure at n={n}"
            break
    report("telescoping identity", tele_ok, tele_detail)

    matrix = convergents_matrix(quotients, upto)
    fast = convergents_fast(quotients, upto)
    engines_ok = matrix == convs and (fast.p, fast.q) == (convs[-1].p, convs[-1].q)
    report("engine equivalence", engines_ok)

    if upto >= 1 and not quotients.terminated:
        rows = probe_table(spec, convs, budget)
        bounds_ok, detail = True, ""
        for r in rows[1:]:  # classical bounds hold from the second convergent
            if not (r.lower_bound_ok and r.upper_bound_ok):
                bounds_ok, detail = False, f"first failure at n={r.display_n}"
                break
        report("residual bounds", bounds_ok, detail)
        env_ok, detail = True, ""
        for r in rows:
            if r.envelope_ok is False:
                env_ok, detail = False, f"violated at n={r.display_n}"
                break
        report("sine envelope", env_ok, detail)

    return 0 if failures == 0 else 1


def _bench_quotients(args) -> list[int]:
    spec_token = args.constant
    n = args.terms
    if spec_token == "random":
        rng = random.Random(args.seed if args.seed is not None else 0)
        return [rng.randint(1, 9) for _ in range(n)]
    spec = parse_constant(spec_token)
    if isinstance(spec, Surd):
        return list(surd_expand(spec, n).quotients.terms[:n])
    # interval expansion would dominate the benchmark; restrict to exact sources
    raise ValueError("bench needs a surd constant (e.g. golden, sqrt:2) or 'random'")


def _cmd_bench(args, out) -> int:
    terms = _bench_quotients(args)
    sizes = sorted({s for s in _BENCH_SIZES if s <= len(terms)} | {len(terms)})
    for size in sizes:
        prefix = terms[:size]
        results = {}
        for engine in _ENGINES:
            counter = WorkCounter()
            start = time.perf_counter()
            last = final_convergent(prefix, size - 1, engine, counter)
            wall = time.perf_counter() - start
            results[engine] = (last.p, last.q)
            _print(out, f"bench terms={size} engine={engine} "
                        f"mul_bits={counter.bits} muls={counter.multiplications} "
                        f"wall_s={wall:.4f}")
        agree = len(set(results.values())) == 1
        _print(out, f"bench terms={size} agreement={'ok' if agree else 'MISMATCH'}")
        if not agree:
            return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfcert",
        description="Certified continued fractions, convergents, and "
                    "irrationality-measure tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, plot_ok=True):
        p.add_argument("constant", help="pi, pi2, pi3, pi^t/s, sqrt:d, "
                                        "surd:a,b,d,c, lit:x, golden")
        p.add_argument("--terms", "--rows", "-n", dest="terms", type=int,
                       default=30, help="terms / table rows (default 30)")
        p.add_argument("--digits", type=int, default=60,
                       help="certified decimal digits (default 60)")
        p.add_argument("--engine", choices=_ENGINES, default="iter")
        formats = ["text", "csv"] + (["plot"] if plot_ok else [])
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--seed", type=int, default=None)

    common(sub.add_parser("expand", help="certified partial quotients"),
           plot_ok=False)
    common(sub.add_parser("convergents", help="convergents p_n/q_n"),
           plot_ok=False)
    common(sub.add_parser("measure", help="irrationality-measure table"))
    common(sub.add_parser("probe", help="residual and sine-probe table"),
           plot_ok=False)
    common(sub.add_parser("verify", help="identity and bound checks"),
           plot_ok=False)
    common(sub.add_parser("bench", help="engine benchmark on exact quotients"),
           plot_ok=False)
    return parser


_COMMANDS = {
    "expand": _cmd_expand,
    "convergents": _cmd_convergents,
    "measure": _cmd_measure,
    "probe": _cmd_probe,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def run(argv: list[str] | None = None, out=None) -> int:
    """Dispatch a command line; returns the process exit code."""
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.terms < 1:
            raise ValueError("--terms must be >= 1")
        if args.digits < 1:
            raise ValueError("--digits must be >= 1")
        return _COMMANDS[args.command](args, out)
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
