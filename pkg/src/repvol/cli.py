"""Command-line entry point ``repvol``.

Exit codes: 0 success, 1 validation failure, 2 numerical failure, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .developing import EquivarianceError, PeripheralError, PlacementPolicy, develop, place_vertices
from .hyperbolic import CLASS_TOL
from .quadrature import QuadratureError
from .triangulation import (
    SchemaError,
    TriangulationError,
    WordError,
    barycentric_subdivide,
    fundamental_cycle,
    parse,
    serialize,
    validate_cocycle,
)
from .volume import (
    DEFAULT_TOL,
    ValidationFailure,
    VolumeFailure,
    compute_volume,
    invariance_test,
    milnor_wood_report,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="repvol", description="Volume of a representation from a triangulation file.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, tol=True):
        p.add_argument("--input", required=True, type=Path, help="triangulation JSON file")
        if tol:
            p.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
            p.add_argument("--class-tol", type=_positive, default=CLASS_TOL,
                           help="tolerance for identity and isometry-class tests")

    p = sub.add_parser("volume", help="compute the volume")
    common(p)
    p.add_argument("--method", choices=("auto", "closed", "quadrature"), default="auto")
    p.add_argument("--placement", choices=("canonical", "random"), default="canonical")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="validate a triangulation and cocycle")
    common(p)

    p = sub.add_parser("invariance", help="volume under random placements")
    common(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("subdivide", help="write the barycentric subdivision")
    common(p, tol=False)
    p.add_argument("--output", required=True, type=Path)

    p = sub.add_parser("bound", help="compare |volume| with N * v_n")
    common(p)
    p.add_argument("--json", action="store_true")
    return parser


def _load(path: Path):
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(data)


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, ensure_ascii=False) + "\n")


def _cmd_volume(args) -> int:
    t, c, p = _load(args.input)
    policy = PlacementPolicy(args.placement, args.seed)
    report = compute_volume(t, c, p, policy, args.tol, args.method, class_tol=args.class_tol)
    if args.json:
        _emit(report.to_dict())
    else:
        print(f"total = {report.total:.12f}")
        print(f"est_error = {report.est_error:.3e}")
        print("methods = " + ", ".join(f"{k}: {v}" for k, v in report.method_counts.items()))
    return EXIT_OK


def _cmd_check(args) -> int:
    t, c, p = _load(args.input)
    fundamental_cycle(t)
    report = validate_cocycle(t, c, args.class_tol)
    cell = "edge" if t.dimension == 3 else "vertex"
    for r in report.failures:
        print(f"FAIL {cell} {r.cell}: simplex {r.simplex} positions {list(r.positions)} "
              f"residual {r.residual:.3e}")
    if report.reverse_residual > max(args.class_tol, 1e-12):
        print(f"FAIL reverse transitions: residual {report.reverse_residual:.3e}")
    if not report.passed:
        return EXIT_INVALID
    develop(t, c, place_vertices(t, c, p, tol=args.class_tol))
    print(f"OK: {len(t.simplices)} simplices, max residual {report.max_residual:.3e}")
    return EXIT_OK


def _cmd_invariance(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    t, c, p = _load(args.input)
    report = invariance_test(t, c, p, args.samples, args.seed, args.tol, class_tol=args.class_tol)
    if args.json:
        _emit(report.to_dict())
    else:
        print(f"{'PASS' if report.passed else 'FAIL'}: max deviation {report.max_deviation:.3e} "
              f"over {args.samples} samples")
    if not report.validation_passed:
        return EXIT_INVALID
    return EXIT_OK if report.passed else EXIT_NUMERIC


def _cmd_subdivide(args) -> int:
    t, c, p = _load(args.input)
    ts, cs = barycentric_subdivide(t, c)
    args.output.write_text(serialize(ts, cs, p), encoding="utf-8")
    print(f"wrote {len(ts.simplices)} simplices to {args.output}")
    return EXIT_OK


def _cmd_bound(args) -> int:
    t, c, p = _load(args.input)
    mw = milnor_wood_report(compute_volume(t, c, p, tol=args.tol, class_tol=args.class_tol))
    if args.json:
        _emit(mw.to_dict())
    else:
        print(f"{'PASS' if mw.passed else 'FAIL'}: |total| = {abs(mw.total):.12f}, "
              f"bound = {mw.bound:.12f}, ratio = {mw.ratio:.6f}")
    return EXIT_OK if mw.passed else EXIT_NUMERIC


COMMANDS = {
    "volume": _cmd_volume,
    "check": _cmd_check,
    "invariance": _cmd_invariance,
    "subdivide": _cmd_subdivide,
    "bound": _cmd_bound,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"repvol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, TriangulationError, WordError, ValidationFailure,
            PeripheralError, EquivarianceError) as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (QuadratureError, VolumeFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
