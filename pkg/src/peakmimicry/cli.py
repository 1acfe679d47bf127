"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import report, verify


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_nonneg, default=100,
                        help="largest n to compute (default 100)")
    common.add_argument("--precision", type=_positive, default=256,
                        help="working precision in bits (default 256)")
    common.add_argument("--pole-pairs", type=_positive, default=1,
                        help="number of conjugate pole pairs K (default 1)")
    common.add_argument("--enum-bound", type=_positive, default=10,
                        help="largest n for brute-force enumeration (default 10)")
    common.add_argument("--format", choices=report.FORMATS, default="plain")

    parser = argparse.ArgumentParser(
        prog="peakmimicry",
        description="Exact and asymptotic analysis of the peak polynomials at t = -1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("coeffs", parents=[common], help="f_n, or P_n(t) with --t")
    p.add_argument("--t", type=_rational, default=None, help="rational t < 1, as NUM/DEN")
    p = sub.add_parser("peaks", parents=[common], help="peak polynomial coefficients")
    p.add_argument("--t", type=_rational, default=None, help="evaluation point, as NUM/DEN")
    sub.add_parser("asymptotics", parents=[common], help="rho, theta, alpha and predictions")
    sub.add_parser("signs", parents=[common], help="sign pattern report")
    sub.add_parser("singularities", parents=[common], help="pole locations and residues")
    sub.add_parser("residuals", parents=[common], help="normalized residuals r_n")
    p = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def _run_verify(level: str) -> int:
    failed = []
    for name, ok, detail, seconds in verify.run(level):
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        # timings vary run to run; keep them off stdout so output stays reproducible
        print(f"  {name}: {seconds:.3f}s", file=sys.stderr)
        if not ok:
            failed.append(name)
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print("all checks passed")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    t = getattr(args, "t", None)
    if args.command == "coeffs" and t is not None and t >= 1:
        parser.error("--t must be < 1")
    if args.command == "signs" and args.order < 1:
        parser.error("signs needs --order >= 1")

    if args.command == "verify":
        return _run_verify(args.level)

    cfg = report.RunConfig(
        order=args.order,
        precision=args.precision,
        pole_pairs=args.pole_pairs,
        enumeration_bound=args.enum_bound,
        output_format=args.format,
        t=t,
    )
    rep = report.BUILDERS[args.command](cfg)
    sys.stdout.write(report.render(rep, cfg.output_format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
