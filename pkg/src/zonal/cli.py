"""Command-line front end: ``zonal <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .exactpoly import default_names
from .partitions import Partition, make_partition, partitions_of, to_text
from .zonalcore import coefficient, coefficient_table, is_zero_coefficient, zonal_polynomial, zonal_polynomial_m

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def parse_partition_arg(text: str) -> Partition:
    """Comma-separated positive integers; unordered input is sorted with a warning."""
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    try:
        parts = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise UsageError(f"malformed partition: {text!r}") from None
    if any(p < 1 for p in parts):
        raise UsageError(f"partition parts must be positive: {text!r}")
    ordered = sorted(parts, reverse=True)
    if ordered != parts:
        _warn(f"partition {text} is not descending; using {to_text(ordered)}")
    return make_partition(ordered)


def parse_fraction_list(text: str | None) -> list[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(tok.strip()) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed number list: {text!r}") from None


def parse_vars(text: str) -> list[str]:
    if text.strip().isdigit():
        count = int(text)
        if count < 1:
            raise UsageError("--vars needs at least one variable")
        return default_names(count)
    names = [tok.strip() for tok in text.split(",")]
    if not all(names) or len(set(names)) != len(names):
        raise UsageError(f"bad variable names: {text!r}")
    return names


def _fmt(x: Fraction, as_float: bool) -> str:
    return repr(float(x)) if as_float else str(x)


def _emit_json(obj: object) -> None:
    print(json.dumps(obj, indent=2))


def cmd_poly(args: argparse.Namespace) -> int:
    lam = parse_partition_arg(args.partition)
    if args.m_basis or args.vars is None:
        sym = zonal_polynomial_m(lam)
        if args.json:
            _emit_json({"partition": list(lam), "basis": "M", "terms": sym.to_json()})
        else:
            print(sym.to_text())
        return EXIT_OK
    names = parse_vars(args.vars)
    poly = zonal_polynomial(lam, len(names))
    if args.json:
        _emit_json({"partition": list(lam), "variables": names, "terms": poly.to_json()})
    else:
        print(poly.to_text(names))
    return EXIT_OK


def cmd_coeff(args: argparse.Namespace) -> int:
    kappa = parse_partition_arg(args.kappa)
    lam = parse_partition_arg(args.lam)
    if sum(kappa) != sum(lam):
        raise UsageError(f"weight mismatch: |{to_text(kappa)}| != |{to_text(lam)}|")
    print(_fmt(coefficient(kappa, lam), args.float))
    return EXIT_OK


def _check_n(n: int) -> None:
    if n < 1:
        raise UsageError("n must be at least 1")


def cmd_table(args: argparse.Namespace) -> int:
    _check_n(args.n)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    tab = coefficient_table(args.n, workers=args.threads)
    if args.json:
        data = tab.to_json()
        if args.float:
            data["coefficients"] = [[float(Fraction(x)) for x in row] for row in data["coefficients"]]
        _emit_json(data)
    elif args.float:
        for row in tab.matrix:
            print(" ".join(_fmt(x, True) for x in row))
    else:
        print(tab.to_text())
    return EXIT_OK


def zero_bitmap(n: int) -> str:
    """Plain PBM of the zero pattern; '1' (black) marks a zero coefficient."""
    parts = partitions_of(n)
    size = len(parts)
    lines = ["P1", f"# zonal zero pattern n={n} version {__version__}", f"{size} {size}"]
    for i, kappa in enumerate(parts):
        bits = "".join(
            "1" if j < i or is_zero_coefficient(kappa, lam) else "0" for j, lam in enumerate(parts)
        )
        # plain PBM lines stay within 70 characters
        lines.extend(bits[k:k + 70] for k in range(0, size, 70))
    return "\n".join(lines) + "\n"


def cmd_zeros(args: argparse.Namespace) -> int:
    _check_n(args.n)
    text = zero_bitmap(args.n)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _pfq_spec(args: argparse.Namespace):
    from .hypermat import PfqSpec

    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    upper = parse_fraction_list(args.upper)
    lower = parse_fraction_list(args.lower)
    if args.float:
        upper, lower = [float(a) for a in upper], [float(b) for b in lower]
    return PfqSpec(upper, lower, args.order)


def _print_number(value, as_float: bool) -> None:
    print(repr(float(value)) if as_float else str(Fraction(value)))


def cmd_pfq(args: argparse.Namespace) -> int:
    from .hypermat import matrix_pfq

    spec = _pfq_spec(args)
    eigs = parse_fraction_list(args.eigs)
    if not eigs:
        raise UsageError("--eigs needs at least one value")
    if args.float:
        eigs = [float(e) for e in eigs]
    try:
        value = matrix_pfq(spec, eigs)
    except ZeroDivisionError as exc:
        raise UsageError(str(exc)) from None
    _print_number(value, args.float)
    return EXIT_OK


def cmd_pfq_scalar(args: argparse.Namespace) -> int:
    from .hypermat import scalar_pfq

    spec = _pfq_spec(args)
    z = parse_fraction_list(args.z)
    if len(z) != 1:
        raise UsageError("--z takes exactly one value")
    try:
        value = scalar_pfq(spec, float(z[0]) if args.float else z[0])
    except ZeroDivisionError as exc:
        raise UsageError(str(exc)) from None
    _print_number(value, args.float)
    return EXIT_OK


def _suite_runner(args: argparse.Namespace) -> Callable[[], dict]:
    from . import closedforms, geomcheck, wishartmc, zonalcore

    def pick(value, default):
        return default if value is None else value

    suite = args.suite
    if suite == "closed-forms":
        if args.n_max is None:
            return closedforms.verify_closed_forms
        n = args.n_max
        return lambda: closedforms.verify_closed_forms(
            row1_n_max=n, two_part_n_max=n, largest_n=(6, n), smallest_n=(8, n))
    if suite == "conjectures":
        a = args.a_max
        if a is None:
            return closedforms.verify_conjectures
        return lambda: closedforms.verify_conjectures(diag3_a_max=a, diag4_a_max=a)
    if suite == "identities":
        return lambda: closedforms.verify_identities(pick(args.a_max, 25))
    if suite == "laplace":
        return lambda: geomcheck.verify_laplace(pick(args.n_max, 6), pick(args.m_max, 6))
    if suite == "trace":
        return lambda: zonalcore.verify_trace(pick(args.n_max, 10), pick(args.m_max, 4))
    if suite == "zeros":
        return lambda: zonalcore.verify_zeros(pick(args.n_max, 12))
    if suite == "wishart":
        y = parse_fraction_list(args.y) or None
        return lambda: wishartmc.verify_wishart(
            n=pick(args.n_max, 4), m=pick(args.m_max, 2), nu=args.nu,
            samples=args.samples, seed=args.seed, y=y)
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    for flag in ("n_max", "m_max", "a_max"):
        value = getattr(args, flag)
        if value is not None and value < 0:
            raise UsageError(f"--{flag.replace('_', '-')} must be nonnegative")
    try:
        report = _suite_runner(args)()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report["pass"] = not report["failures"]
    _emit_json(report)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_wishart(args: argparse.Namespace) -> int:
    from .wishartmc import mc_expectation_u

    y = parse_fraction_list(args.y) or None
    try:
        report = mc_expectation_u(args.n, args.m, args.nu, y=y, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_json(report)
    return EXIT_OK if report["pass"] else EXIT_FAIL


SUITES = ("closed-forms", "conjectures", "identities", "laplace", "wishart", "trace", "zeros")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zonal", description="Exact zonal polynomial toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="zonal polynomial C_lambda")
    p.add_argument("partition")
    p.add_argument("--vars", help="variable count or comma-separated names")
    p.add_argument("--m-basis", action="store_true", help="print in the monomial symmetric basis")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("coeff", help="single coefficient c[kappa, lambda]")
    p.add_argument("kappa")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("--float", action="store_true")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("table", help="full coefficient matrix for partitions of n")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--float", action="store_true")
    p.add_argument("--threads", type=int, default=1, help="worker processes for row construction")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("zeros", help="PBM bitmap of the zero pattern")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_zeros)

    for name, func, help_ in (("pfq", cmd_pfq, "truncated pFq of matrix argument"),
                              ("pfq-scalar", cmd_pfq_scalar, "truncated scalar pFq")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--upper", default="", help="comma-separated upper parameters")
        p.add_argument("--lower", default="", help="comma-separated lower parameters")
        if name == "pfq":
            p.add_argument("--eigs", required=True, help="comma-separated eigenvalues")
        else:
            p.add_argument("--z", required=True, help="scalar argument")
        p.add_argument("--order", type=int, required=True)
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="float", action="store_false")
        mode.add_argument("--float", dest="float", action="store_true")
        p.set_defaults(func=func, float=False)

    p = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n-max", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--a-max", type=int)
    p.add_argument("--nu", type=int, default=3, help="wishart suite only")
    p.add_argument("--samples", type=int, default=100_000, help="wishart suite only")
    p.add_argument("--seed", type=int, default=42, help="wishart suite only")
    p.add_argument("--y", help="wishart suite only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wishart", help="Monte-Carlo check of E[U(YW)] = T U(Y)")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--nu", type=int, default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--y", help="comma-separated diagonal of Y (default 1,2,...,m)")
    p.set_defaults(func=cmd_wishart)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
