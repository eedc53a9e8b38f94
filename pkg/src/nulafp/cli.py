"""
Command-line interface.

Angles are given in degrees. Exit codes: 0 success, 1 usage error,
2 certification failure (or no certifiable design), 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import __version__
from .design import (
    DesignRequest,
    NulaDesign,
    design_nula,
    enumerate_designs,
    verify_cancellation,
)
from .exceptions import InfeasibleDesignError, NulaError, ScenarioError
from .geometry import NulaGeometry, UlaGeometry
from .grating import gl_enumerate, gl_exists
from .io import format_table, load_scenario, pattern_table, atomic_write, scaffold_scenario
from .scenario import compute_sinr, fp_convergence_sweep, nula_family, ula_family

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERT = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_geometry(p: argparse.ArgumentParser, n_default: Optional[int] = None) -> None:
    p.add_argument("--d", type=float, required=True, help="element spacing in wavelengths")
    p.add_argument("--n", type=int, default=n_default, required=n_default is None,
                   help="ULA size, or subarray size when --nb is given")
    p.add_argument("--nb", type=int, help="number of blocks (makes the array a NULA)")
    p.add_argument("--p", type=int, help="gap multiplier: block gap = p*d/nb")
    p.add_argument("--gap", type=float, help="explicit block gap in wavelengths (overrides --p)")


def _geometry(args, n: Optional[int] = None):
    n = args.n if n is None else n
    if args.d <= 0 or n is None or n < 1:
        raise UsageError("--d must be positive and --n a positive integer")
    if args.nb is None:
        if args.p is not None or args.gap is not None:
            raise UsageError("--p/--gap need --nb")
        return UlaGeometry(n, args.d)
    if args.nb < 1:
        raise UsageError("--nb must be a positive integer")
    if args.gap is not None:
        gap = args.gap
    elif args.p is not None:
        if args.p < 1:
            raise UsageError("--p must be a positive integer")
        gap = args.p * args.d / args.nb
    else:
        raise UsageError("a NULA needs --p or --gap")
    if gap <= 0:
        raise UsageError("block gap must be positive")
    return NulaGeometry(args.nb, UlaGeometry(n, args.d), gap)


def _angle(deg: float, flag: str) -> float:
    if not -90.0 <= deg <= 90.0:
        raise UsageError(f"{flag} must lie in [-90, 90] degrees")
    return math.radians(deg)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_gl(args) -> int:
    if args.d <= 0:
        raise UsageError("--d must be positive")
    theta1 = _angle(args.theta1, "--theta1")
    gls = gl_enumerate(args.d, theta1)
    print(f"d={args.d:g} theta1={args.theta1:g}deg grating lobes: {'yes' if gl_exists(args.d, theta1) else 'no'}")
    if not gls:
        print("no grating lobes")
    for k, phi in gls:
        print(f"k={k} phi={math.degrees(phi):.2f}deg")
    return EXIT_OK


def _print_design(design: NulaDesign, n_sub: int) -> None:
    geom = design.geometry(n_sub)
    print(f"N_b={design.n_blocks} p={design.p} gcd={math.gcd(design.p, design.n_blocks)}")
    print(f"delta_D={design.block_gap:.12g} D={geom.block_pitch:.12g} (N={n_sub})")
    print(f"elements={geom.size} aperture={geom.aperture:.12g}")


def _print_report(report, verbose: bool = True) -> None:
    for c in report.checks if verbose else report.failures:
        status = "ok" if c.passed else "FAIL"
        print(f"theta1={math.degrees(c.theta1):.6f}deg k={c.k} |alpha_b|={c.block_leakage:.3e} {status}")
    n_fail = len(report.failures)
    print(f"checks={len(report.checks)} failures={n_fail}")
    print("certified" if report.passed else "certification FAILED")


def _request(args) -> DesignRequest:
    if args.d <= 0:
        raise UsageError("--d must be positive")
    theta_max = _angle(args.theta_max, "--theta-max")
    if theta_max <= 0:
        raise UsageError("--theta-max must be positive")
    return DesignRequest(args.d, theta_max, args.budget, args.n)


def cmd_design(args) -> int:
    req = _request(args)
    try:
        design = design_nula(req, n_blocks=args.nb, p=args.p)
    except InfeasibleDesignError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_CERT
    _print_design(design, args.n)
    report = verify_cancellation(design, req.d, req.theta_max)
    _print_report(report, verbose=not args.quiet)
    return EXIT_OK if report.passed else EXIT_CERT


def cmd_verify(args) -> int:
    req = _request(args)
    design = NulaDesign(args.nb, args.p, req.d)
    _print_design(design, args.n)
    report = verify_cancellation(design, req.d, req.theta_max)
    _print_report(report, verbose=not args.quiet)
    return EXIT_OK if report.passed else EXIT_CERT


def cmd_enumerate(args) -> int:
    req = _request(args)
    try:
        designs = enumerate_designs(req, args.max_nb, args.max_gap)
    except InfeasibleDesignError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_CERT
    rows = [(d.n_blocks, d.p, d.block_gap) for d in designs]
    _emit(format_table(("n_blocks", "p", "delta_d"), rows), args.out)
    return EXIT_OK


def cmd_pattern(args) -> int:
    geom = _geometry(args)
    table = pattern_table(geom, _angle(args.theta1, "--theta1"), args.resolution)
    _emit(table.to_text(), args.out)
    return EXIT_OK


def cmd_sinr(args) -> int:
    scenario = load_scenario(args.scenario)
    rep = compute_sinr(_geometry(args), scenario)
    print(f"sinr={rep.sinr:.12g} linear ({rep.sinr_db:.6f} dB)")
    for i, a in zip(rep.interferers, rep.per_user_leakage):
        print(f"user {i}: |alpha|^2={a:.6e}")
    print(f"total_leakage={rep.total_leakage:.6e}")
    print(f"fp_gap={rep.fp_gap:.12g}")
    return EXIT_OK


def _n_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise UsageError("--n-list needs positive integers")
    return values


def cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.d <= 0:
        raise UsageError("--d must be positive")
    if args.nb is None:
        family = ula_family(args.d)
    else:
        if args.p is None or args.p < 1 or args.nb < 1:
            raise UsageError("a NULA sweep needs positive --nb and --p")
        family = nula_family(args.nb, args.p, args.d)
    rows = fp_convergence_sweep(family, scenario, _n_list(args.n_list))
    _emit(format_table(("n", "total_leakage", "sinr"), [(r.n, r.total_leakage, r.sinr) for r in rows]), args.out)
    return EXIT_OK


def cmd_scaffold(args) -> int:
    aoas = [float(v) for v in args.aoas.split(",")]
    scaffold_scenario(args.out, aoas, args.snr_db, args.pattern)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nulafp", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gl", help="list grating lobes of a ULA")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--theta1", type=float, required=True, help="steering angle, degrees")
    p.set_defaults(func=cmd_gl)

    for name, func, helptext in (
        ("design", cmd_design, "choose (N_b, p) and certify grating-lobe cancellation"),
        ("verify", cmd_verify, "certify a given (N_b, p)"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--d", type=float, required=True)
        p.add_argument("--theta-max", type=float, default=90.0, help="degrees")
        p.add_argument("--nb", type=int, required=name == "verify")
        p.add_argument("--p", type=int, required=name == "verify")
        p.add_argument("--n", type=int, default=1, help="subarray size for reporting D and aperture")
        p.add_argument("--budget", type=int, help="maximum total element count")
        p.add_argument("-q", "--quiet", action="store_true", help="only print failing checks")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", help="list certified designs")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--theta-max", type=float, default=90.0)
    p.add_argument("--max-nb", type=int, required=True)
    p.add_argument("--max-gap", type=float, help="largest block gap, wavelengths (default 2d)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("pattern", help="write the array factor over -90..90 degrees")
    _add_geometry(p)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--resolution", type=float, default=0.1, help="degrees")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("sinr", help="matched-filter SINR for a scenario file")
    p.add_argument("scenario")
    _add_geometry(p)
    p.set_defaults(func=cmd_sinr)

    p = sub.add_parser("sweep", help="total leakage and SINR versus array size")
    p.add_argument("scenario")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--nb", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n-list", default="100,1000,10000")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scaffold", help="write a starter scenario file")
    p.add_argument("--out", required=True)
    p.add_argument("--aoas", default="45,-30", help="comma-separated AoAs in degrees")
    p.add_argument("--snr-db", type=float, default=10.0)
    p.add_argument("--pattern", default="omni", choices=["omni", "short_dipole"])
    p.set_defaults(func=cmd_scaffold)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nulafp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"nulafp: scenario error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"nulafp: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NulaError, ValueError) as exc:
        print(f"nulafp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
