"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion.  Criterion 1 is expected to fail: it pins the printed
estimate for 100 trials / 5 successes to 0.0939 at four decimal places,
but the constant-risk shrinkage formula (sqrt(n) xbar + 1/2)/(sqrt(n)+1)
— the same formula criterion 10 pins to constant risk 1/484 — evaluates
to 1/11 = 0.0909...; no estimator satisfies both.  The suite asserts the
stated figure rather than silently substituting the computed one.
"""

import json
import math
import time

import numpy as np

from bernoulli_minimax import (
    AttainKind,
    BinaryEstimator,
    GeneralEstimator,
    GridSpec,
    ParamSpace,
    branch_formulas,
    case_b_risk_at_half,
    classic_minimax,
    ellipse_residual,
    general_risk_at,
    general_sup_risk,
    grid_minimax,
    hyperbola_gap,
    minimax_n1,
    minimax_value,
    monte_carlo_risk,
    refine,
    risk_at,
    sup_risk,
)
from conftest import run_cli, text_value, ulps_apart

ETA_SWEEP = [round(0.05 * k, 2) for k in range(1, 21)]


def _report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {criterion:02d}] {status} — {detail}")


def test_criterion_01_classic_worked_example_prints_stated_value():
    code, out, _ = run_cli(["classic", "--n", "100", "--k", "5"])
    printed = float(text_value(out, "results.estimate"))
    formatted = f"{printed:.4f}"
    ok = code == 0 and formatted == "0.0939"
    _report(1, ok, f"classic(100, 5) prints {formatted} at 4 dp; required 0.0939")
    assert ok, (
        f"printed estimate {formatted} != stated 0.0939; the shrinkage formula "
        f"(sqrt(100)*0.05 + 0.5)/(sqrt(100)+1) = {1.0 / 11.0!r} makes the stated "
        "figure unreachable (see also criterion 10, which pins the same formula)"
    )


def test_criterion_01_addendum_printed_value_matches_formula():
    # The emitted estimate is the exact shrinkage-formula value and exceeds
    # the raw rate, which is the example's actual point.
    code, out, _ = run_cli(["classic", "--n", "100", "--k", "5", "--format", "json"])
    printed = json.loads(out)["results"]["estimate"]
    ok = code == 0 and printed == classic_minimax(100, 0.05) and printed > 0.05
    _report(1, ok, "addendum: emitted value equals the formula and exceeds the raw rate")
    assert ok


def test_criterion_02_bounded_estimate_worked_example():
    code0, out0, _ = run_cli(["estimate", "--eta", "0.2", "--x", "0"])
    value0 = float(text_value(out0, "results.estimate"))
    code1, out1, _ = run_cli(["estimate", "--eta", "0.2", "--x", "1"])
    value1 = float(text_value(out1, "results.estimate"))
    ok = code0 == 0 and code1 == 0 and 0.09442 <= value0 <= 0.09443 and value1 == 0.2
    _report(2, ok, f"estimate(eta=0.2): x=0 -> {value0:.7f}, x=1 -> {value1}")
    assert ok


def test_criterion_03_oracle_equivalence_sweep():
    started = time.perf_counter()
    worst_ab = 0.0
    worst_value = 0.0
    for eta in ETA_SWEEP:
        space = ParamSpace(eta)
        target = minimax_n1(space)
        solution = refine(space, grid_minimax(space, GridSpec(1e-3)).estimator, tol=1e-8)
        worst_ab = max(worst_ab, abs(solution.a - target.a_star), abs(solution.b - target.b_star))
        worst_value = max(worst_value, abs(solution.value - target.value))
    elapsed = time.perf_counter() - started
    ok = worst_ab <= 1e-6 and worst_value <= 1e-9 and elapsed < 60.0
    _report(3, ok, f"max |ab diff| {worst_ab:.2e}, max |value diff| {worst_value:.2e}, {elapsed:.1f}s")
    assert ok


def test_criterion_04_constant_risk_kind_and_value():
    est = BinaryEstimator(0.25, 0.75)
    ok = True
    for eta in (0.75, 0.8, 0.85, 0.9, 0.95, 1.0):
        res = sup_risk(est, ParamSpace(eta))
        ok &= res.kind is AttainKind.CONSTANT
        ok &= abs(res.value - 0.0625) <= math.ulp(0.0625)
    _report(4, ok, "sup of (1/4, 3/4) constant at 1/16 for eta in {0.75..1.0}")
    assert ok


def test_criterion_05_endpoint_risk_equality():
    worst = 0.0
    for eta in [round(0.05 * k, 2) for k in range(1, 16)]:
        u = 1.0 - eta
        est = BinaryEstimator(math.sqrt(u) - u, eta)
        worst = max(worst, abs(risk_at(est, 0.0) - risk_at(est, eta)))
    ok = worst <= 1e-12
    _report(5, ok, f"max |f(0) - f(eta)| = {worst:.2e} over the restricted branch")
    assert ok


def test_criterion_06_branch_continuity_at_junction():
    restricted, unrestricted = branch_formulas(0.75)
    checks = (
        ulps_apart(restricted.a_star, 0.25, floor=0.25) <= 1.0,
        ulps_apart(restricted.b_star, 0.75, floor=0.75) <= 1.0,
        ulps_apart(restricted.value, 0.0625, floor=0.0625) <= 1.0,
        unrestricted.a_star == 0.25,
        unrestricted.b_star == 0.75,
        unrestricted.value == 0.0625,
    )
    ok = all(checks)
    _report(6, ok, "both branch formulas at eta=3/4 give (1/4, 3/4) and 1/16 within 1 ulp")
    assert ok


def test_criterion_07_steep_pairs_never_minimax():
    rng = np.random.default_rng(31337)
    ok = True
    for eta in (0.55, 0.75, 1.0):
        space = ParamSpace(eta)
        target = minimax_value(space)
        for _ in range(10_000):
            a = rng.uniform(0.0, eta - 0.5)
            b = a + 0.5 + (eta - a - 0.5) * max(rng.random(), 1e-12)
            est = BinaryEstimator(a, b)
            if not (risk_at(est, 0.5) > 0.0625 and sup_risk(est, space).value > target):
                ok = False
                break
    _report(7, ok, "10^4 sampled pairs with b > a + 1/2 all dominated, three etas")
    assert ok


def test_criterion_08_identity_suites():
    started = time.perf_counter()

    rng = np.random.default_rng(777)
    sign_ok = True
    for _ in range(10_000):
        eta = rng.uniform(1e-6, 1.0)
        space = ParamSpace(eta)
        est = BinaryEstimator(rng.uniform(0.0, eta), rng.uniform(0.0, eta))
        gap = hyperbola_gap(est, space)
        if abs(gap) <= 1e-9:
            continue
        if (gap > 0.0) != (risk_at(est, 0.0) - risk_at(est, eta) > 0.0):
            sign_ok = False
            break

    rng = np.random.default_rng(888)
    worst_residual = 0.0
    for _ in range(10_000):
        eta = rng.uniform(1e-6, 1.0 - 1e-6)
        space = ParamSpace(eta)
        est = BinaryEstimator(rng.uniform(0.0, eta), rng.uniform(0.0, eta))
        gamma = risk_at(est, eta)
        if gamma <= 1e-6:
            continue
        worst_residual = max(worst_residual, abs(ellipse_residual(est, space, gamma)))

    rng = np.random.default_rng(20250810)
    worst_ulps = 0.0
    for _ in range(10_000):
        est = BinaryEstimator(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
        worst_ulps = max(worst_ulps, ulps_apart(case_b_risk_at_half(est), risk_at(est, 0.5)))

    elapsed = time.perf_counter() - started
    ok = sign_ok and worst_residual <= 1e-9 and worst_ulps <= 4.0 and elapsed < 5.0
    _report(
        8,
        ok,
        f"hyperbola signs ok={sign_ok}, max ellipse residual {worst_residual:.2e}, "
        f"max half-identity ulps {worst_ulps:.2f}, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_09_monte_carlo_cross_check():
    started = time.perf_counter()
    rng = np.random.default_rng(424242)
    ok = True
    for i in range(20):
        a, b, theta = rng.uniform(0.0, 1.0, size=3)
        exact = risk_at(BinaryEstimator(a, b), theta)
        mc = monte_carlo_risk(GeneralEstimator(1, (a, b)), theta, 10**6, seed=1000 + i)
        if abs(mc.mean - exact) > 4.0 * mc.std_error:
            ok = False
            break
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 30.0
    _report(9, ok, f"20 seeded triples, 10^6 draws each, within 4 SE, {elapsed:.1f}s")
    assert ok


def test_criterion_10_hundred_trial_constant_risk_scan():
    n = 100
    est = GeneralEstimator(n, tuple(classic_minimax(n, k / n) for k in range(n + 1)))
    thetas = np.linspace(0.0, 1.0, 4098)  # the default scan resolution
    risks = general_risk_at(est, thetas)
    spread = float(risks.max() - risks.min())
    sup = general_sup_risk(est, ParamSpace(1.0))
    deviation = abs(sup.value - 1.0 / 484.0)
    ok = spread <= 1e-9 and deviation <= 1e-9
    _report(10, ok, f"scan spread {spread:.2e}, |sup - 1/484| = {deviation:.2e}")
    assert ok


def test_criterion_11_verify_command_green_and_deterministic():
    args = ["verify", "--eta-step", "0.05", "--grid-step", "1e-3"]
    code1, out1, _ = run_cli(args)
    code2, out2, _ = run_cli(args)
    all_green = "FAIL" not in out1 and "result: PASS" in out1
    ok = code1 == 0 and code2 == 0 and all_green and out1 == out2
    _report(11, ok, f"verify exit {code1}, all properties green, byte-identical reruns")
    assert ok
