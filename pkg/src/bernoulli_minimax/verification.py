"""Property battery cross-checking the closed form against the solvers.

Each property is a numerical statement that must hold for the closed-form
solution to be correct: the brute-force oracle must land on it, its
endpoint risks must balance on the restricted branch, the classical rule
must stay constant-risk on the loose branch, the branch formulas must
join continuously, and the geometric predicates (hyperbola ordering,
ellipse level sets, the half-point lower bound) must match direct risk
evaluations on random inputs.

The battery is pure computation; the CLI renders its results.  All
sampling is driven by explicit seeds so a battery run is reproducible
byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import (
    branch_formulas,
    case_b_risk_at_half,
    endpoint_risk_spread,
    hyperbola_gap,
    ellipse_residual,
    minimax_n1,
    minimax_value,
    solution_consistency,
)
from .risk import AttainKind, BinaryEstimator, ParamSpace, risk_at, sup_risk
from .solvers import GridSpec, grid_minimax, refine

__all__ = ["PropertyCheck", "BATTERY_TOLERANCES", "run_battery", "sweep_values"]

# Tolerances used by the battery, surfaced in CLI metadata.
BATTERY_TOLERANCES = {
    "grid_ab": "2 * grid_step",
    "grid_value": "grid_step",
    "refined_value": 1e-9,
    "endpoint_equality": 1e-12,
    "constant_risk_ulps": 1,
    "branch_continuity": 1e-6,
    "hyperbola_gap_floor": 1e-9,
    "ellipse_residual": 1e-9,
    "ellipse_gamma_floor": 1e-6,
    "half_identity_ulps": 4,
    "value_consistency": 1e-12,
}


@dataclass(frozen=True, slots=True)
class PropertyCheck:
    """Outcome of one property at one eta (eta None for global checks)."""

    name: str
    eta: float | None
    passed: bool
    detail: str


def sweep_values(step: float) -> list[float]:
    """The eta sweep {0, step, 2 step, ...} clamped to end exactly at 1."""
    if not 0.0 < step <= 1.0:
        raise ValueError(f"eta step must lie in (0, 1], got {step}")
    m = int(math.floor(1.0 / step + 1e-9))
    values = [min(i * step, 1.0) for i in range(m + 1)]
    if values[-1] < 1.0:
        values.append(1.0)
    out: list[float] = []
    for v in values:
        if not out or v > out[-1]:
            out.append(v)
    return out


def _rng(seed: int, eta: float, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt, int(round(eta * 10**9))])


def _within_ulps(x: float, y: float, n: int) -> bool:
    # Unit-floored ulp comparison: near-zero outputs of cancelling
    # expressions cannot agree in their own last place.
    return abs(x - y) <= n * math.ulp(max(abs(x), abs(y), 1.0))


def _check_oracle(eta: float, grid_step: float, workers: int) -> PropertyCheck:
    space = ParamSpace(eta)
    sol = minimax_n1(space)
    grid = grid_minimax(space, GridSpec(grid_step), workers=workers)
    refined = refine(space, grid.estimator, tol=1e-8)
    da = abs(grid.a - sol.a_star)
    db = abs(grid.b - sol.b_star)
    dv_grid = grid.value - sol.value
    dv_ref = abs(refined.value - sol.value)
    ok = (
        da <= 2.0 * grid_step
        and db <= 2.0 * grid_step
        and -1e-12 <= dv_grid <= grid_step
        and dv_ref <= BATTERY_TOLERANCES["refined_value"]
    )
    detail = f"|da|={da:.3g} |db|={db:.3g} grid-dv={dv_grid:.3g} refined-dv={dv_ref:.3g}"
    return PropertyCheck("oracle-agreement", eta, ok, detail)


def _check_endpoint_equality(eta: float) -> PropertyCheck:
    spread = endpoint_risk_spread(ParamSpace(eta))
    ok = spread <= BATTERY_TOLERANCES["endpoint_equality"]
    return PropertyCheck("endpoint-equality", eta, ok, f"|f(0)-f(eta)|={spread:.3g}")


def _check_constant_risk(eta: float) -> PropertyCheck:
    result = sup_risk(BinaryEstimator(0.25, 0.75), ParamSpace(eta))
    dv = abs(result.value - 0.0625)
    ok = result.kind is AttainKind.CONSTANT and dv <= math.ulp(0.0625)
    return PropertyCheck("constant-risk", eta, ok, f"kind={result.kind.value} |v-1/16|={dv:.3g}")


def _check_value_consistency(eta: float) -> PropertyCheck:
    gap = solution_consistency(ParamSpace(eta))
    ok = gap <= BATTERY_TOLERANCES["value_consistency"]
    return PropertyCheck("value-consistency", eta, ok, f"|value-sup|={gap:.3g}")


def _check_case_b_dominance(eta: float, seed: int, samples: int) -> PropertyCheck:
    space = ParamSpace(eta)
    target = minimax_value(space)
    rng = _rng(seed, eta, 1)
    worst_margin = math.inf
    ok = True
    for _ in range(samples):
        a = rng.uniform(0.0, eta - 0.5)
        u = max(rng.random(), 1e-12)
        b = a + 0.5 + (eta - a - 0.5) * u
        est = BinaryEstimator(a, b)
        half = risk_at(est, 0.5)
        sup = sup_risk(est, space).value
        worst_margin = min(worst_margin, half - 0.0625, sup - target)
        if not (half > 0.0625 and sup > target):
            ok = False
            break
    return PropertyCheck("case-b-dominance", eta, ok, f"min margin={worst_margin:.3g}")


def _check_hyperbola_sign(eta: float, seed: int, samples: int) -> PropertyCheck:
    space = ParamSpace(eta)
    rng = _rng(seed, eta, 2)
    checked = 0
    for _ in range(samples):
        est = BinaryEstimator(rng.uniform(0.0, eta), rng.uniform(0.0, eta))
        gap = hyperbola_gap(est, space)
        if abs(gap) <= BATTERY_TOLERANCES["hyperbola_gap_floor"]:
            continue
        checked += 1
        diff = risk_at(est, 0.0) - risk_at(est, eta)
        if (gap > 0.0) != (diff > 0.0):
            return PropertyCheck(
                "hyperbola-sign", eta, False, f"sign mismatch at a={est.a} b={est.b}"
            )
    return PropertyCheck("hyperbola-sign", eta, True, f"checked={checked}")


def _check_ellipse_identity(eta: float, seed: int, samples: int) -> PropertyCheck:
    space = ParamSpace(eta)
    rng = _rng(seed, eta, 3)
    worst = 0.0
    checked = 0
    for _ in range(samples):
        est = BinaryEstimator(rng.uniform(0.0, eta), rng.uniform(0.0, eta))
        gamma = risk_at(est, eta)
        if gamma <= BATTERY_TOLERANCES["ellipse_gamma_floor"]:
            continue
        checked += 1
        worst = max(worst, abs(ellipse_residual(est, space, gamma)))
    ok = worst <= BATTERY_TOLERANCES["ellipse_residual"]
    return PropertyCheck("ellipse-identity", eta, ok, f"checked={checked} max|res|={worst:.3g}")


def _check_branch_continuity() -> PropertyCheck:
    left, right = branch_formulas(0.75)
    exact = (
        _within_ulps(left.a_star, 0.25, 1)
        and _within_ulps(left.b_star, 0.75, 1)
        and _within_ulps(left.value, 0.0625, 1)
        and right.a_star == 0.25
        and right.b_star == 0.75
        and right.value == 0.0625
    )
    tol = BATTERY_TOLERANCES["branch_continuity"]
    sols = [minimax_n1(ParamSpace(e)) for e in (0.75 - 1e-12, 0.75, 0.75 + 1e-12)]
    close = all(
        abs(s.a_star - t.a_star) <= tol and abs(s.b_star - t.b_star) <= tol
        for s in sols
        for t in sols
    )
    ok = exact and close
    return PropertyCheck("branch-continuity", None, ok, "junction at eta=3/4")


def _check_half_identity(seed: int, samples: int) -> PropertyCheck:
    rng = _rng(seed, 0.0, 4)
    worst_ulps = 0.0
    for _ in range(samples):
        est = BinaryEstimator(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
        x = case_b_risk_at_half(est)
        y = risk_at(est, 0.5)
        scale = math.ulp(max(abs(x), abs(y), 1.0))
        worst_ulps = max(worst_ulps, abs(x - y) / scale)
    ok = worst_ulps <= BATTERY_TOLERANCES["half_identity_ulps"]
    return PropertyCheck("half-point-identity", None, ok, f"max ulps={worst_ulps:.2f}")


def _check_monotonicity(etas: list[float]) -> PropertyCheck:
    values = [minimax_value(ParamSpace(e)) for e in etas]
    ok = all(v2 >= v1 for v1, v2 in zip(values, values[1:]))
    return PropertyCheck("value-monotonicity", None, ok, f"{len(values)} grid points")


def run_battery(
    eta_values: list[float],
    grid_step: float = 1e-3,
    seed: int = 0,
    samples: int = 2000,
    workers: int = 1,
) -> list[PropertyCheck]:
    """Run every applicable property at every eta plus the global checks.

    Properties that need a nondegenerate configuration are skipped where
    they do not apply (ellipse geometry at eta in {0, 1}, dominance
    sampling when b > a + 1/2 is infeasible, and so on).
    """
    checks: list[PropertyCheck] = []
    for eta in eta_values:
        checks.append(_check_oracle(eta, grid_step, workers))
        if eta <= 0.75:
            checks.append(_check_endpoint_equality(eta))
        if eta >= 0.75:
            checks.append(_check_constant_risk(eta))
        checks.append(_check_value_consistency(eta))
        if eta > 0.5:
            checks.append(_check_case_b_dominance(eta, seed, samples))
        if eta > 0.0:
            checks.append(_check_hyperbola_sign(eta, seed, samples))
        if 0.0 < eta < 1.0:
            checks.append(_check_ellipse_identity(eta, seed, samples))
    checks.append(_check_branch_continuity())
    checks.append(_check_half_identity(seed, samples))
    checks.append(_check_monotonicity(eta_values))
    return checks
