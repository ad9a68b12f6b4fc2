"""Command-line interface: ``quota-betti <subcommand>``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 domain error such as an empty complex.
"""
from __future__ import annotations

import argparse
import csv
import json
import secrets
import sys
from fractions import Fraction

from . import analysis, bernoulli, homology, verify
from .core import EmptyComplexError, QuotaSystem, betti_by_counting, read_weights

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _positive_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _q_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _params(args) -> bernoulli.BernoulliParams:
    try:
        return bernoulli.BernoulliParams(args.n, args.q, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_betti(args, out) -> int:
    try:
        with open(args.weights, encoding="utf-8") as fh:
            weights = read_weights(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.weights}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{args.weights}: {exc}") from None
    system = QuotaSystem(weights, args.q)
    try:
        betti = betti_by_counting(system)
    except EmptyComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    result = {"betti": betti.to_list()}
    status = EXIT_OK
    if args.oracle:
        oracle = homology.reduced_betti(homology.ExplicitComplex.from_quota_system(system))
        result["oracle"] = oracle.to_list()
        result["agree"] = oracle == betti
        status = EXIT_OK if result["agree"] else EXIT_VERIFY
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "betti"] + (["oracle"] if args.oracle else []))
        for m in range(max(len(betti), len(result.get("oracle", [])))):
            w.writerow([m, betti[m]] + ([result["oracle"][m] if m < len(result["oracle"]) else 0] if args.oracle else []))
    else:
        print(_dump(result), file=out)
    return status


def cmd_expect(args, out) -> int:
    params = _params(args)
    if args.m is not None:
        print(_dump(bernoulli.expected_betti(params, args.m)), file=out)
        return EXIT_OK
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["m", "expectation"])
    for m in bernoulli.support_range(params):
        w.writerow([m, repr(bernoulli.expected_betti(params, m))])
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    params = _params(args)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    est = bernoulli.monte_carlo_expectation(params, args.m, args.trials, seed)
    print(_dump(est.to_dict()), file=out)
    return EXIT_OK


CONVERGENCE_HEADER = ["q", "N", "d_actual", "m_peak", "tau_peak", "tau_infinity", "gap"]


def cmd_peak(args, out) -> int:
    if not 0.0 < args.p < 1.0:
        raise UsageError("--p must lie in (0, 1)")
    if not args.d > 0.5:
        raise UsageError("--d must exceed 1/2")
    result = analysis.solve_tau_infinity(args.p, args.d).to_dict()
    if args.q_list:
        rows = analysis.peak_convergence_study(args.p, args.d, args.q_list)
        result["convergence"] = [{k: getattr(r, k) for k in CONVERGENCE_HEADER} for r in rows]
        if args.out:
            try:
                with open(args.out, "w", newline="") as fh:
                    w = csv.writer(fh, lineterminator="\n")
                    w.writerow(CONVERGENCE_HEADER)
                    for r in rows:
                        w.writerow(["" if getattr(r, k) is None else getattr(r, k) for k in CONVERGENCE_HEADER])
            except OSError as exc:
                raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    print(_dump(result), file=out)
    return EXIT_OK


def cmd_regions(args, out) -> int:
    try:
        report = analysis.region_grid(args.pmin, args.pmax, args.dmin, args.dmax, args.res)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = {"rows": len(report.rows), "counts": report.counts()}
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                report.write_csv(fh)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
        summary["out"] = args.out
        print(_dump(summary), file=out)
    else:
        report.write_csv(out)
        print(_dump(summary), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ok = verify.run(args.level, args.seed, emit=lambda line: print(line, file=out))
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quota-betti", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="reduced Betti numbers of a quota complex")
    p.add_argument("weights", help="weights file: one positive decimal per line, # comments")
    p.add_argument("--q", type=_positive_fraction, required=True, help="quota")
    p.add_argument("--oracle", action="store_true", help="also run the boundary-rank oracle")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("expect", help="closed-form expected Betti numbers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of an expected Betti number")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, help="master seed (random and recorded if omitted)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("peak", help="asymptotic peak location tau_inf")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--q-list", type=_q_list, help="comma-separated quotas for a convergence study")
    p.add_argument("--out", help="write the convergence rows as CSV")
    p.set_defaults(func=cmd_peak)

    p = sub.add_parser("regions", help="sign regions of the growth constants over (p, d)")
    p.add_argument("--pmin", type=float, default=0.01)
    p.add_argument("--pmax", type=float, default=0.99)
    p.add_argument("--dmin", type=float, default=0.51)
    p.add_argument("--dmax", type=float, default=2.0)
    p.add_argument("--res", type=int, default=200)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("verify", help="run the cross-oracle suites")
    p.add_argument("--level", choices=sorted(verify.LEVELS), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
