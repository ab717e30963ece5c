"""Command-line interface.

Exit codes: 0 success (verification passed, point is a member), 1 a
verification ran and failed (or the point is not a member, or the solver
gave up), 2 usage or input-format error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from hypercone.ring import NotDivisible, Poly, PolyVec, as_rational, format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SAMPLES = 10_000


class UsageError(Exception):
    pass


def parse_point(text: str) -> tuple:
    """``"1,1/2,0"`` -> ``(1, Fraction(1, 2), 0)``."""
    try:
        return tuple(as_rational(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}: {exc}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load(path: str, loader, what: str):
    obj = _load_json(path)
    try:
        return loader(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path}: not a valid {what} file ({type(exc).__name__}: {exc})") from None


def load_poly(path: str) -> Poly:
    return _load(path, Poly.from_json, "polynomial")


def load_polyvec(path: str) -> PolyVec:
    return _load(path, PolyVec.from_json, "polynomial vector")


def load_pencil(path: str):
    from hypercone.pencil import SymPencil

    return _load(path, SymPencil.from_json, "pencil")


def load_cone(path: str):
    from hypercone.polycone import RayCone

    return _load(path, RayCone.from_json, "ray cone")


def _emit(args, obj: dict) -> None:
    text = json.dumps(obj, indent=1, sort_keys=False)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")


# -- subcommands --------------------------------------------------------------


def cmd_verify_vamos(args) -> int:
    from hypercone.vamoslab import verify_certificate

    report = verify_certificate(samples=args.samples, seed=args.seed,
                                skip_support_search=not args.support_search)
    print(report.text())
    _emit(args, report.to_json(timings=False))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    from hypercone.construct import (
        DegreeMismatch,
        DivisibilityPrecondition,
        Infeasible,
        RationalizationFailed,
        SolveOptions,
        assemble_constraints,
        check_mixed_identity,
        derived_p,
        rationalize,
        solve_feasibility,
    )

    h = load_poly(args.h)
    f = load_polyvec(args.f)
    try:
        opts = SolveOptions(residual_tol=args.tol, max_iter=args.max_iter, denom_bound=args.denom_bound,
                            seed=args.seed, trace_path=args.trace)
        system = assemble_constraints(h, args.e, f, args.d_prime)
    except (DivisibilityPrecondition, DegreeMismatch, ValueError) as exc:
        raise UsageError(f"precondition failed: {exc}") from None
    print(f"system: {system.shape[0]} equations, {system.shape[1]} unknowns")
    try:
        num = solve_feasibility(system, args.e, opts)
        print(f"numeric solution: {num.iterations} iterations, residual {num.residual:.3g}, "
              f"lambda_min(A(e)) {num.lambda_min:.6f}")
        exact = rationalize(num, system, args.e, opts)
    except Infeasible as exc:
        print(f"solver failed (not a proof of infeasibility): {exc}", file=sys.stderr)
        return EXIT_FAIL
    except RationalizationFailed as exc:
        print(f"rationalization failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    det = exact.pencil.det()
    try:
        q = det.exact_divide(h)
    except NotDivisible:
        q = None
    out = {
        "pencil": exact.pencil.to_json(),
        "g": exact.g.to_json(),
        "det": det.to_json(),
        "q": q.to_json() if q is not None else None,
        "degenerate_g": exact.degenerate,
        "denom_bound": exact.denom_bound,
    }
    print(f"det A(x) = {det}")
    print(f"q = det / h = {q}" if q is not None else "det is not divisible by h")
    if args.d_prime == h.total_degree() - 1 and not exact.degenerate:
        p = derived_p(f, exact.g)
        mixed = check_mixed_identity(h, p, f, exact.pencil)
        out["p"] = p.to_json()
        out["mixed_identity"] = mixed
        print(f"mixed identity per variable: {mixed}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(out, fh, indent=1)
            fh.write("\n")
    _emit(args, out)
    return EXIT_OK if q is not None else EXIT_FAIL


def cmd_det(args) -> int:
    pencil = load_pencil(args.pencil)
    det = pencil.det()
    obj = det.to_json()
    print(json.dumps(obj, indent=1))
    _emit(args, obj)
    return EXIT_OK


def cmd_dual(args) -> int:
    from hypercone.polycone import DimensionError, dual_cone

    cone = load_cone(args.rays)
    try:
        forms = dual_cone(cone)
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    obj = {"dim": cone.dim, "rays": [f.to_json() for f in forms]}
    print(json.dumps(obj, indent=1))
    _emit(args, obj)
    return EXIT_OK


def cmd_cone_member(args) -> int:
    from hypercone.hyperbolic import HyperbolicInstance

    h = load_poly(args.h)
    try:
        H = HyperbolicInstance(h, args.e)
        member = H.in_cone(args.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("yes" if member else "no")
    _emit(args, {"member": member, "v": [format_rational(x) for x in args.v],
                 "e": [format_rational(x) for x in args.e]})
    return EXIT_OK if member else EXIT_FAIL


def cmd_hyperbolic_check(args) -> int:
    from hypercone.hyperbolic import HyperbolicInstance, check_hyperbolic_sampled

    h = load_poly(args.h)
    try:
        H = HyperbolicInstance(h, args.e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = check_hyperbolic_sampled(H, args.samples, args.seed)
    print(report.dumps())
    _emit(args, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags; subparsers repeat them with suppressed defaults so either position works."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--json", metavar="PATH", default=default(None),
                        help="also write machine-readable output here")
    parser.add_argument("--seed", type=_seed, metavar="U64", default=default(0), help="sampling seed (default 0)")
    parser.add_argument("--samples", type=_positive, metavar="N", default=default(DEFAULT_SAMPLES),
                        help=f"number of random samples (default {DEFAULT_SAMPLES})")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False),
                        help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercone",
        description="Exact tools for hyperbolic polynomials, their cones and determinantal representations.",
    )
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("verify-vamos", parents=[common], help="verify the bundled Vamos certificate")
    p.add_argument("--support-search", action="store_true",
                   help="also search for tangency witnesses of the dual generators (slow, best effort)")
    p.set_defaults(func=cmd_verify_vamos)

    p = sub.add_parser("construct", parents=[common], help="search for a pencil with A(x) f = h g, A(e) > 0")
    p.add_argument("--h", required=True, metavar="FILE", help="polynomial JSON")
    p.add_argument("--e", required=True, type=parse_point, metavar="POINT", help="e.g. 1,0,0")
    p.add_argument("--f", required=True, metavar="FILE", help="polynomial vector JSON")
    p.add_argument("--d-prime", required=True, type=int, metavar="D", help="degree of the entries of f")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=_positive, default=100_000, help="solver iterations (default 100000)")
    p.add_argument("--denom-bound", type=_positive, default=10**6, help="rounding denominator bound (default 1e6)")
    p.add_argument("--out", metavar="FILE", help="write the exact pencil, g and diagnostics here")
    p.add_argument("--trace", metavar="CSV", help="write the solver trace here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("det", parents=[common], help="determinant of a pencil")
    p.add_argument("--pencil", required=True, metavar="FILE")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("dual", parents=[common], help="generators of the dual of a ray cone")
    p.add_argument("--rays", required=True, metavar="FILE")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("cone-member", parents=[common], help="exact hyperbolicity-cone membership")
    p.add_argument("--h", required=True, metavar="FILE")
    p.add_argument("--e", required=True, type=parse_point, metavar="POINT")
    p.add_argument("--v", required=True, type=parse_point, metavar="POINT")
    p.set_defaults(func=cmd_cone_member)

    p = sub.add_parser("hyperbolic-check", parents=[common], help="sampled exact hyperbolicity test")
    p.add_argument("--h", required=True, metavar="FILE")
    p.add_argument("--e", required=True, type=parse_point, metavar="POINT")
    p.set_defaults(func=cmd_hyperbolic_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hypercone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
