"""Command-line front end: ``bhabha-ent <command> ...``.

Exit codes: 0 success, 1 a check command found a violation, 2 usage error.
"""
import argparse
import logging
import math
import sys

from .errors import DomainError
from .sweep import (MU_M, SweepPlan, check_limits, check_mirror, check_spectator,
                    figure_plan, run_sweep, write_csv)


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _emit(records, out):
    if out in (None, "-"):
        write_csv(records, sys.stdout)
    else:
        write_csv(records, out)
    failed = sum(not r.ok for r in records)
    if failed:
        print(f"{failed} of {len(records)} points failed (NaN rows)", file=sys.stderr)
    return 0


def cmd_sweep(args):
    plan = SweepPlan(theta_points=args.theta_points, mu=args.mu, eta=args.eta,
                     beta=args.beta, incoming=args.incoming, out=args.out)
    return _emit(run_sweep(plan), plan.out)


def cmd_figure(args):
    plan = figure_plan(args.id)
    if args.theta_points:
        plan = SweepPlan(args.theta_points, plan.mu, plan.eta, plan.beta, plan.incoming)
    return _emit(run_sweep(plan), args.out or plan.out)


def cmd_check_limits(args):
    rep = check_limits(args.mu_large, args.tol, measure_rate=args.rate)
    print(f"mu = {rep.mu:g}, tolerance {rep.tol:g}")
    for ch, dev in rep.max_deviation.items():
        order = f"  order ~ {rep.convergence_order[ch]:.2f}" if rep.convergence_order else ""
        print(f"  {ch:6s} max |pipeline - limit| = {dev:.3e}{order}")
    print("PASS" if rep.passed else "FAIL")
    return 0 if rep.passed else 1


def cmd_check_mirror(args):
    rep = check_mirror(args.mu, args.eta, args.beta, args.theta_points)
    print(f"mu = {rep.mu:g}, eta = {rep.eta:.6g}")
    print(f"  max |C_opp(theta) - C(2 pi - theta)| = {rep.max_reflection_error:.3e}")
    print(f"  asymmetry of C about pi              = {rep.asymmetry:.3e}")
    print("PASS" if rep.passed else "FAIL")
    return 0 if rep.passed else 1


def cmd_check_spectator(args):
    rep = check_spectator(args.mu, args.eta, args.w, args.cutoffs)
    print(f"  max |offdiag|                 = {rep.max_offdiag:.3e}")
    print(f"  max offdiag change over cutoffs = {rep.max_cutoff_change:.3e}")
    print(f"  max diagonal deviation        = {rep.max_diag_deviation:.3e}")
    print(f"offdiag {'PASS' if rep.offdiag_passed else 'FAIL'}, "
          f"diagonal {'PASS' if rep.diag_passed else 'FAIL'}")
    return 0 if rep.passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="bhabha-ent", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="concurrence sweep to CSV")
    s.add_argument("--theta-points", type=int, default=720)
    s.add_argument("--mu", type=_floats, default=(1.0,))
    s.add_argument("--eta", type=_floats, default=(math.pi / 4,))
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--incoming", choices=("R", "L"), default="R")
    s.add_argument("--out", default=None, help="output CSV path (default stdout)")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("figure", help="run the shipped plan for a figure (2-11)")
    s.add_argument("id")
    s.add_argument("--theta-points", type=int, default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_figure)

    s = sub.add_parser("check-limits", help="pipeline vs high-energy closed forms")
    s.add_argument("--mu-large", type=float, default=1000.0)
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--rate", action="store_true", help="also measure the convergence order")
    s.set_defaults(func=cmd_check_limits)

    s = sub.add_parser("check-mirror", help="opposite helicities reflect the curve about pi")
    s.add_argument("--mu", type=float, default=2.0)
    s.add_argument("--eta", type=float, default=math.pi / 8)
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--theta-points", type=int, default=720)
    s.set_defaults(func=cmd_check_mirror)

    s = sub.add_parser("check-spectator", help="spectator state before vs after")
    s.add_argument("--mu", type=_floats, default=(MU_M, 1.0, 5.0, 100.0))
    s.add_argument("--eta", type=_floats, default=(math.pi / 8, math.pi / 4, 3 * math.pi / 8))
    s.add_argument("--w", type=_floats, default=(0.0, 1.0, 100.0))
    s.add_argument("--cutoffs", type=_floats, default=(1e-3, 1e-4))
    s.set_defaults(func=cmd_check_spectator)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
