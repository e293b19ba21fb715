"""Command-line front end: estimation, solving, curves, verification.

This is the only module that performs I/O.  Every command emits a single
output envelope (schema_version, command, inputs, results, metadata) in
one of three formats: human-oriented text (7 significant digits),
machine-oriented JSON, or CSV (full round-trip float precision).  Output
bytes are deterministic for identical arguments and seed; wall-clock
timing is only recorded when --timing is passed, precisely so that the
default output stays byte-stable.

Exit codes: 0 success, 1 verification or tolerance failure, 2 argument
error, 3 solver non-convergence, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .closed_form import classic_minimax, minimax_n1
from .risk import BinaryEstimator, ParamSpace, risk_at, risk_curve
from .solvers import (
    GENERATOR_NAME,
    ConvergenceError,
    GridSpec,
    grid_minimax,
    refine,
)
from .verification import BATTERY_TOLERANCES, run_battery, sweep_values

__all__ = ["main"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4

DEFAULT_SEED = 1729

SOLVE_TOLERANCES = {"a": 1e-6, "b": 1e-6, "value": 1e-9}


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="grid sweep worker threads")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    common.add_argument(
        "--timing",
        action="store_true",
        help="record wall time in metadata (makes output bytes nondeterministic)",
    )

    parser = argparse.ArgumentParser(
        prog="bernoulli-minimax",
        description="Minimax estimation of a Bernoulli proportion bounded above by eta.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", parents=[common], help="closed-form estimate from one trial")
    p.add_argument("--eta", type=float, required=True, help="upper bound on the proportion")
    p.add_argument("--x", type=int, choices=(0, 1), required=True, help="observed outcome")

    p = sub.add_parser("classic", parents=[common], help="constant-risk estimate from n trials")
    p.add_argument("--n", type=int, required=True, help="number of trials")
    p.add_argument("--k", type=int, required=True, help="number of successes")

    p = sub.add_parser("solve", parents=[common], help="brute-force solve and compare")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--step", type=float, default=1e-3, help="grid spacing")
    p.add_argument("--tol", type=float, default=1e-8, help="refinement tolerance")

    p = sub.add_parser("risk-curve", parents=[common], help="tabulate the risk of a pair (a, b)")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--a", type=float, required=True, help="estimate when X = 0")
    p.add_argument("--b", type=float, required=True, help="estimate when X = 1")
    p.add_argument("--points", type=int, default=101, help="curve sample count")

    p = sub.add_parser("verify", parents=[common], help="run the full property battery")
    p.add_argument("--eta-step", type=float, default=0.05, help="eta sweep spacing")
    p.add_argument("--grid-step", type=float, default=1e-3, help="oracle grid spacing")
    p.add_argument("--samples", type=int, default=2000, help="random samples per property")

    return parser


def _space(eta: float) -> ParamSpace:
    try:
        return ParamSpace(eta)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _cmd_estimate(args) -> tuple[dict, dict, int]:
    sol = minimax_n1(_space(args.eta))
    estimate = sol.a_star if args.x == 0 else sol.b_star
    results = {
        "branch": sol.branch.value,
        "a_star": sol.a_star,
        "b_star": sol.b_star,
        "estimate": estimate,
        "minimax_value": sol.value,
    }
    return results, {}, EXIT_OK


def _cmd_classic(args) -> tuple[dict, dict, int]:
    if args.n < 1:
        raise _UsageError(f"n must be at least 1, got {args.n}")
    if not 0 <= args.k <= args.n:
        raise _UsageError(f"k must lie in [0, n] = [0, {args.n}], got {args.k}")
    mean = args.k / args.n
    results = {"mean": mean, "estimate": classic_minimax(args.n, mean)}
    return results, {}, EXIT_OK


def _cmd_solve(args) -> tuple[dict, dict, int]:
    space = _space(args.eta)
    try:
        grid = grid_minimax(space, GridSpec(args.step), workers=args.threads)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if args.tol <= 0:
        raise _UsageError(f"tol must be positive, got {args.tol}")
    refined = refine(space, grid.estimator, tol=args.tol)
    sol = minimax_n1(space)
    diff = {
        "a": abs(refined.a - sol.a_star),
        "b": abs(refined.b - sol.b_star),
        "value": abs(refined.value - sol.value),
    }
    within = (
        diff["a"] <= SOLVE_TOLERANCES["a"]
        and diff["b"] <= SOLVE_TOLERANCES["b"]
        and diff["value"] <= SOLVE_TOLERANCES["value"]
    )
    results = {
        "grid": {"a": grid.a, "b": grid.b, "value": grid.value, "evaluations": grid.evaluations},
        "refined": {
            "a": refined.a,
            "b": refined.b,
            "value": refined.value,
            "evaluations": refined.evaluations,
        },
        "analytic": {"a": sol.a_star, "b": sol.b_star, "value": sol.value, "branch": sol.branch.value},
        "abs_diff": diff,
        "within_tolerance": within,
    }
    return results, dict(SOLVE_TOLERANCES), EXIT_OK if within else EXIT_FAIL


def _cmd_risk_curve(args) -> tuple[dict, dict, int]:
    space = _space(args.eta)
    try:
        est = BinaryEstimator(args.a, args.b)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if space.eta == 0.0:
        print(
            "warning: eta = 0 collapses the curve to the single point theta = 0; "
            "coercing points to 1",
            file=sys.stderr,
        )
        pairs = [(0.0, risk_at(est, 0.0))]
    else:
        if args.points < 2:
            raise _UsageError(f"points must be at least 2, got {args.points}")
        pairs = risk_curve(est, space, args.points)
    results = {
        "points": len(pairs),
        "theta": [t for t, _ in pairs],
        "risk": [r for _, r in pairs],
    }
    return results, {}, EXIT_OK


def _cmd_verify(args) -> tuple[dict, dict, int]:
    if not 0.0 < args.eta_step <= 1.0:
        raise _UsageError(f"eta-step must lie in (0, 1], got {args.eta_step}")
    if not 0.0 < args.grid_step <= 1.0:
        raise _UsageError(f"grid-step must lie in (0, 1], got {args.grid_step}")
    if args.samples < 1:
        raise _UsageError(f"samples must be at least 1, got {args.samples}")
    etas = sweep_values(args.eta_step)
    checks = run_battery(
        etas,
        grid_step=args.grid_step,
        seed=args.seed,
        samples=args.samples,
        workers=args.threads,
    )
    failures = [c for c in checks if not c.passed]
    results = {
        "etas": etas,
        "total": len(checks),
        "failures": len(failures),
        "checks": [
            {"eta": c.eta, "property": c.name, "passed": c.passed, "detail": c.detail}
            for c in checks
        ],
    }
    tolerances = dict(BATTERY_TOLERANCES)
    return results, tolerances, EXIT_OK if not failures else EXIT_FAIL


_HANDLERS = {
    "estimate": _cmd_estimate,
    "classic": _cmd_classic,
    "solve": _cmd_solve,
    "risk-curve": _cmd_risk_curve,
    "verify": _cmd_verify,
}

_INPUT_KEYS = {
    "estimate": ("eta", "x"),
    "classic": ("n", "k"),
    "solve": ("eta", "step", "tol"),
    "risk-curve": ("eta", "a", "b", "points"),
    "verify": ("eta_step", "grid_step", "samples"),
}


def _fmt7(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.7g}"
    if value is None:
        return "null"
    return str(value)


def _fmt_full(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "null"
    return str(value)


def _csv_cell(value) -> str:
    text = _fmt_full(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            rows.extend(_flatten(val, f"{prefix}{key}."))
    elif isinstance(obj, (list, tuple)):
        for i, val in enumerate(obj):
            rows.extend(_flatten(val, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _render_text(envelope: dict) -> str:
    command = envelope["command"]
    lines = [f"schema_version: {envelope['schema_version']}", f"command: {command}"]
    for key, val in _flatten(envelope["inputs"], "inputs."):
        lines.append(f"{key}: {_fmt7(val)}")
    results = envelope["results"]
    if command == "risk-curve":
        lines.append(f"results.points: {results['points']}")
        lines.append(f"{'theta':>12}  {'risk':>12}")
        for t, r in zip(results["theta"], results["risk"]):
            lines.append(f"{_fmt7(t):>12}  {_fmt7(r):>12}")
    elif command == "verify":
        lines.append(f"results.total: {results['total']}")
        lines.append(f"results.failures: {results['failures']}")
        lines.append(f"{'eta':>6}  {'property':<20} {'status':<6} detail")
        for check in results["checks"]:
            eta = "-" if check["eta"] is None else f"{check['eta']:.2f}"
            status = "PASS" if check["passed"] else "FAIL"
            lines.append(f"{eta:>6}  {check['property']:<20} {status:<6} {check['detail']}")
        for check in results["checks"]:
            if not check["passed"]:
                eta = "all" if check["eta"] is None else _fmt7(check["eta"])
                lines.append(f"failed: property={check['property']} eta={eta}")
        verdict = "PASS" if results["failures"] == 0 else "FAIL"
        lines.append(f"result: {verdict}")
    else:
        for key, val in _flatten(results, "results."):
            lines.append(f"{key}: {_fmt7(val)}")
    for key, val in _flatten(envelope["metadata"], "metadata."):
        lines.append(f"{key}: {_fmt7(val)}")
    return "\n".join(lines) + "\n"


def _render_csv(envelope: dict) -> str:
    command = envelope["command"]
    results = envelope["results"]
    if command == "risk-curve":
        lines = ["theta,risk"]
        lines.extend(
            f"{_fmt_full(t)},{_fmt_full(r)}" for t, r in zip(results["theta"], results["risk"])
        )
        return "\n".join(lines) + "\n"
    if command == "verify":
        lines = ["eta,property,passed,detail"]
        for check in results["checks"]:
            lines.append(
                ",".join(
                    (
                        _csv_cell(check["eta"]),
                        _csv_cell(check["property"]),
                        _csv_cell(check["passed"]),
                        _csv_cell(check["detail"]),
                    )
                )
            )
        return "\n".join(lines) + "\n"
    lines = ["key,value"]
    lines.append(f"schema_version,{envelope['schema_version']}")
    lines.append(f"command,{command}")
    for key, val in _flatten(envelope["inputs"], "inputs."):
        lines.append(f"{_csv_cell(key)},{_csv_cell(val)}")
    for key, val in _flatten(results, "results."):
        lines.append(f"{_csv_cell(key)},{_csv_cell(val)}")
    for key, val in _flatten(envelope["metadata"], "metadata."):
        lines.append(f"{_csv_cell(key)},{_csv_cell(val)}")
    return "\n".join(lines) + "\n"


def _render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(envelope)
    return _render_text(envelope)


def _write(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        results, tolerances, code = _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE

    wall_ms = (time.perf_counter() - started) * 1e3 if args.timing else None
    envelope = {
        "schema_version": "1",
        "command": args.command,
        # threads is deliberately not echoed: the worker count must not
        # change a single output byte.
        "inputs": {
            **{key: getattr(args, key) for key in _INPUT_KEYS[args.command]},
            "format": args.format,
            "out": args.out,
            "seed": args.seed,
        },
        "results": results,
        "metadata": {
            "tolerances": tolerances,
            "seed": args.seed,
            "generator": GENERATOR_NAME,
            "wall_time_ms": wall_ms,
        },
    }
    payload = _render(envelope, args.format)
    try:
        _write(payload, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
