"""Command-line front end.

Commands: info, bounds, regions, eigs, verify.  Every command accepts
--json for machine-readable output.  Exit codes: 0 success / all checks
pass, 1 usage or input error, 2 verification failure (an eigenvalue
escaped a region or the bound chain ordering failed).

Machine formats print floats with 17 significant digits so that reports
round-trip bit-exactly; human tables use 6 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import CHAIN_VIOLATION_WARNING, compare_report
from .oracle import Eigenpair, OracleConfig, verify_inclusion, z_eigs_newton, z_eigs_sweep_n2
from .regions import RadialRegion, region_K, region_M, region_Omega
from .tensor import DenseTensor, TensorFormatError, parse_tensor

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

_REGION_BUILDERS = {"K": region_K, "M": region_M, "Omega": region_Omega}


class UsageError(Exception):
    """Bad flags or unreadable/malformed input; maps to exit code 1."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- deterministic JSON with 17-significant-digit floats ----------------------


def render_json(value, indent: int = 2) -> str:
    parts: list[str] = []
    _render(value, indent, 0, parts)
    parts.append("\n")
    return "".join(parts)


def _render(value, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, item) in enumerate(value.items()):
            out.append(pad + json.dumps(key) + ": ")
            _render(item, indent, level + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for k, item in enumerate(value):
            out.append(pad)
            _render(item, indent, level + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(close_pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, float):
        out.append(f"{value:.17g}")
    elif isinstance(value, int):
        out.append(repr(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _load_tensor(path: str) -> DenseTensor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read '{path}': {exc.strerror or exc}") from None
    try:
        return parse_tensor(text)
    except TensorFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _oracle_config(args) -> OracleConfig:
    try:
        return OracleConfig(restarts=args.restarts, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_grid(grid: int) -> int:
    if grid < 100:
        raise UsageError("--grid must be >= 100")
    return grid


# -- commands ------------------------------------------------------------------


def cmd_info(args) -> int:
    tensor = _load_tensor(args.file)
    agg = tensor.aggregates()
    doc = {
        "order": tensor.order,
        "dim": tensor.dim,
        "entry_count": tensor.dim**tensor.order,
        "nonnegative": tensor.is_nonnegative(),
        "symmetric": tensor.is_symmetric(),
        "weakly_symmetric": tensor.is_weakly_symmetric(),
        "row_sums": [float(v) for v in agg.row_sums],
        "max_row_sum": float(np.max(agg.row_sums)),
    }
    if args.json:
        sys.stdout.write(render_json(doc))
    else:
        print(f"order: {doc['order']}")
        print(f"dim: {doc['dim']}")
        print(f"entry count: {doc['entry_count']}")
        print(f"nonnegative: {'yes' if doc['nonnegative'] else 'no'}")
        print(f"symmetric: {'yes' if doc['symmetric'] else 'no'}")
        print(f"weakly symmetric: {'yes' if doc['weakly_symmetric'] else 'no'}")
        for i, v in enumerate(doc["row_sums"], start=1):
            print(f"row sum {i}: {_fmt(v)}")
        print(f"max row sum: {_fmt(doc['max_row_sum'])}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    tensor = _load_tensor(args.file)
    report = compare_report(tensor)
    if args.json:
        sys.stdout.write(render_json(report.to_dict()))
    else:
        i, j = report.attaining_pair
        print(f"omega_max: {_fmt(report.omega_max)} (attained at pair ({i}, {j}))")
        print(f"omega_hat_max: {_fmt(report.omega_hat_max)}")
        print(f"omega_tilde_max: {_fmt(report.omega_tilde_max)}")
        print(f"chain_middle: {_fmt(report.chain_middle)}")
        print(f"gershgorin: {_fmt(report.gershgorin)}")
        for warning in report.warnings:
            print(f"warning: {warning}")
    return EXIT_VERIFY if CHAIN_VIOLATION_WARNING in report.warnings else EXIT_OK


def _interval_text(iv) -> str:
    left = "(" if iv.lo_open else "["
    right = ")" if iv.hi_open else "]"
    return f"{left}{_fmt(iv.lo)}, {_fmt(iv.hi)}{right}"


def _region_doc(region: RadialRegion) -> dict:
    return {
        "intervals": [
            {"lo": iv.lo, "hi": iv.hi, "lo_open": iv.lo_open, "hi_open": iv.hi_open}
            for iv in region.intervals
        ],
        "supremum": region.supremum,
        "empty": region.is_empty,
    }


def cmd_regions(args) -> int:
    tensor = _load_tensor(args.file)
    agg = tensor.aggregates()
    names = ["K", "M", "Omega"] if args.set == "all" else [args.set]
    if args.csv is not None and len(names) != 1:
        raise UsageError("--csv requires a single set (K, M or Omega), not 'all'")
    regions = {name: _REGION_BUILDERS[name](agg) for name in names}
    if args.csv is not None:
        try:
            Path(args.csv).write_text(regions[names[0]].to_csv(), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write '{args.csv}': {exc.strerror or exc}") from None
    if args.json:
        sys.stdout.write(render_json({name: _region_doc(reg) for name, reg in regions.items()}))
    else:
        for name in names:
            reg = regions[name]
            print(f"{name}: {len(reg.intervals)} interval(s), sup {_fmt(reg.supremum)}")
            for iv in reg.intervals:
                print(f"  {_interval_text(iv)}")
    return EXIT_OK


def _run_oracle(tensor: DenseTensor, method: str, args) -> list[Eigenpair]:
    if method == "sweep":
        if tensor.dim != 2:
            raise UsageError(f"method 'sweep' requires dim = 2, tensor has dim {tensor.dim}")
        return z_eigs_sweep_n2(tensor, _check_grid(args.grid))
    return z_eigs_newton(tensor, _oracle_config(args))


def cmd_eigs(args) -> int:
    tensor = _load_tensor(args.file)
    method = args.method or ("sweep" if tensor.dim == 2 else "newton")
    pairs = _run_oracle(tensor, method, args)
    if args.json:
        sys.stdout.write(render_json([p.to_dict() for p in pairs]))
    else:
        print(f"found {len(pairs)} eigenpair(s) (method: {method}, seed: {args.seed})")
        for p in pairs:
            xs = ", ".join(_fmt(v) for v in p.x)
            print(f"lambda {_fmt(p.value)}  residual {p.residual:.3e}  x [{xs}]")
    return EXIT_OK


def cmd_verify(args) -> int:
    tensor = _load_tensor(args.file)
    bound_report = compare_report(tensor)
    chain_ok = CHAIN_VIOLATION_WARNING not in bound_report.warnings
    method = "sweep" if tensor.dim == 2 else "newton"
    pairs = _run_oracle(tensor, method, args)
    if args.inject_lambda is not None:
        # Fault-injection hook: append a fabricated eigenpair to exercise the
        # failure path end to end.
        x = np.zeros(tensor.dim)
        x[0] = 1.0
        pairs = pairs + [Eigenpair(float(args.inject_lambda), x, 0.0)]
    report = verify_inclusion(tensor, pairs)
    ok = report.all_passed and chain_ok
    if args.json:
        doc = {
            "method": method,
            "seed": args.seed if method == "newton" else None,
            "chain_ok": chain_ok,
            "eigenpairs": [p.to_dict() for p in pairs],
        }
        doc.update(report.to_dict())
        doc["all_passed"] = ok
        sys.stdout.write(render_json(doc))
    else:
        print(f"method: {method}")
        print(f"eigenpairs: {len(pairs)}")
        print(f"omega_max: {_fmt(report.omega_max)}")
        print(f"bound applies: {'yes' if report.bound_applies else 'no'}")
        print(f"chain ordering: {'ok' if chain_ok else 'VIOLATED'}")
        for check in report.checks:
            if check.passed:
                continue
            problems = []
            if not check.in_omega:
                problems.append("not in Omega")
            if not check.in_m:
                problems.append("not in M")
            if not check.in_k:
                problems.append("not in K")
            if check.within_omega_max is False:
                problems.append("exceeds omega_max")
            print(f"VIOLATION lambda {_fmt(check.value)}: {'; '.join(problems)}")
        if ok:
            print("all checks passed")
        else:
            count = len(report.failures()) + (0 if chain_ok else 1)
            print(f"{count} violation(s)")
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser --------------------------------------------------------------------


def build_parser() -> _ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    parser = _ArgumentParser(
        prog="zeig",
        description="Z-eigenvalue inclusion regions and spectral-radius bounds for real tensors.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_ArgumentParser)

    p = sub.add_parser("info", parents=[common], help="tensor structure and row sums")
    p.add_argument("file", help="tensor JSON file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("bounds", parents=[common], help="closed-form spectral-radius bounds")
    p.add_argument("file", help="tensor JSON file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("regions", parents=[common], help="inclusion regions as radius intervals")
    p.add_argument("file", help="tensor JSON file")
    p.add_argument("--set", choices=["K", "M", "Omega", "all"], default="all", help="which set to build")
    p.add_argument("--csv", metavar="PATH", help="write the chosen set as CSV (single set only)")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("eigs", parents=[common], help="find Z-eigenpairs")
    p.add_argument("file", help="tensor JSON file")
    p.add_argument("--method", choices=["sweep", "newton"], help="default: sweep when dim = 2, else newton")
    p.add_argument("--restarts", type=int, default=1000, help="newton restarts (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="newton master seed (default 0)")
    p.add_argument("--grid", type=int, default=100_000, help="sweep grid size (default 100000)")
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("verify", parents=[common], help="check found eigenvalues against regions and bounds")
    p.add_argument("file", help="tensor JSON file")
    p.add_argument("--restarts", type=int, default=1000, help="newton restarts (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="newton master seed (default 0)")
    p.add_argument("--grid", type=int, default=100_000, help="sweep grid size (default 100000)")
    p.add_argument("--inject-lambda", type=float, default=None, metavar="VALUE",
                   help="fault-injection hook: add a fabricated eigenvalue before verification")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help exits through argparse
        return int(exc.code or 0)
    if getattr(args, "func", None) is None:
        print("error: a command is required (info, bounds, regions, eigs, verify)", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
