"""Brute-force and derivative-free solvers for the min-sup risk problem.

These are the independent cross-checks for ``closed_form``:

* ``grid_minimax``     -- exhaustive sweep of an (a, b) grid over
  [0, eta]^2 with the inner supremum computed exactly by quadratic case
  analysis (never by theta sampling),
* ``refine``           -- golden-section coordinate descent that polishes
  a grid solution; the objective is a maximum of quadratics, so it has
  kinks and flat valleys where gradient methods stall,
* ``general_sup_risk`` -- theta-scan supremum for estimators built from
  n > 1 trials; plumbing with no optimality claims attached,
* ``monte_carlo_risk`` -- seeded stochastic estimate of the risk.

Determinism contract: with identical inputs, every solver here returns
bit-identical results across runs and, for ``grid_minimax``, across any
worker count.  Ties on the grid objective are resolved by a fixed total
order; the grid is swept in fixed blocks whose shape does not depend on
the worker count, and block results are merged with the same comparator
regardless of completion order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.stats import binom

from .risk import AttainKind, BinaryEstimator, ParamSpace, SupRiskResult, sup_risk

__all__ = [
    "ConvergenceError",
    "GENERATOR_NAME",
    "GeneralEstimator",
    "GridSpec",
    "MonteCarloRisk",
    "NumericSolution",
    "general_risk_at",
    "general_sup_risk",
    "grid_axis",
    "grid_minimax",
    "monte_carlo_risk",
    "refine",
]

# Seeded RNG used by monte_carlo_risk; recorded in CLI output metadata.
GENERATOR_NAME = "numpy-pcg64"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2

_ROW_BLOCK = 128  # grid rows per block; fixed so results don't depend on workers


class ConvergenceError(RuntimeError):
    """Raised when refine exhausts its sweep budget without settling."""


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Spacing of the exhaustive (a, b) grid; endpoints always included."""

    step: float

    def __post_init__(self) -> None:
        step = float(self.step)
        if not math.isfinite(step) or step <= 0.0:
            raise ValueError(f"step must be a finite positive real, got {step}")
        object.__setattr__(self, "step", step)


@dataclass(frozen=True, slots=True)
class NumericSolution:
    """Numeric minimizer of the worst-case risk.

    ``value`` equals sup_risk((a, b), space).value through the scalar code
    path; ``evaluations`` counts supremum evaluations (grid points plus
    line-search probes); ``refined`` marks results polished by refine.
    """

    a: float
    b: float
    value: float
    evaluations: int
    refined: bool

    @property
    def estimator(self) -> BinaryEstimator:
        return BinaryEstimator(self.a, self.b)


@dataclass(frozen=True, slots=True)
class GeneralEstimator:
    """Estimator from n trials: d[k] is reported on k observed successes."""

    n: int
    d: tuple[float, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        d = tuple(float(x) for x in self.d)
        if len(d) != self.n + 1:
            raise ValueError(f"d must have n + 1 = {self.n + 1} entries, got {len(d)}")
        if not all(math.isfinite(x) for x in d):
            raise ValueError("all entries of d must be finite")
        object.__setattr__(self, "d", d)


class MonteCarloRisk(NamedTuple):
    mean: float
    std_error: float


def grid_axis(upper: float, step: float) -> np.ndarray:
    """Multiples of ``step`` from 0 through ``upper``, endpoint included.

    The last point is clamped to ``upper`` when the step does not divide
    it exactly, so boundary optima are always on the grid.
    """
    upper = float(upper)
    if upper == 0.0:
        return np.zeros(1)
    # The 1e-9 slack absorbs division rounding like 0.3/0.001 -> 299.9999...
    m = int(math.floor(upper / step + 1e-9))
    values = np.minimum(np.arange(m + 1, dtype=float) * step, upper)
    if values[-1] < upper:
        values = np.append(values, upper)
    return np.unique(values)


def _block_candidate(
    axis: np.ndarray, lo: int, hi: int, eta: float
) -> tuple[float, float, float]:
    """Best (value, a, b) over grid rows lo..hi-1, all columns.

    The sup over theta is evaluated vectorized with the same expressions
    and Horner order as the scalar path in ``risk``; see the tie-break
    note in grid_minimax.
    """
    a = axis[lo:hi][:, None]
    b = axis[None, :]
    c2 = 2.0 * a - 2.0 * b + 1.0
    c1 = b * b - a * a - 2.0 * a
    c0 = a * a
    f_lo = (c2 * 0.0 + c1) * 0.0 + c0  # same expression as risk_at(est, 0.0)
    f_hi = (c2 * eta + c1) * eta + c0
    with np.errstate(divide="ignore", invalid="ignore"):
        t_v = -c1 / (2.0 * c2)
        f_v = (c2 * t_v + c1) * t_v + c0
    interior = (c2 < 0.0) & (t_v >= 0.0) & (t_v <= eta)
    values = np.where(interior, f_v, np.where(f_lo >= f_hi, f_lo, f_hi))

    best = values.min()
    rows = np.nonzero((values == best).any(axis=1))[0]
    r = int(rows[0])  # smallest a among ties
    cols = np.nonzero(values[r] == best)[0]
    j = int(cols[-1])  # largest b among ties
    return float(best), float(axis[lo + r]), float(axis[j])


def _better(cand: tuple[float, float, float], best: tuple[float, float, float]) -> bool:
    """Total order on candidates: smaller value, then smaller a, then larger b."""
    if cand[0] != best[0]:
        return cand[0] < best[0]
    if cand[1] != best[1]:
        return cand[1] < best[1]
    return cand[2] > best[2]


def grid_minimax(space: ParamSpace, grid: GridSpec, workers: int = 1) -> NumericSolution:
    """Exhaustive minimizer of the worst-case risk over a grid of [0, eta]^2.

    Every grid pair is scored with the exact supremum; the reported pair
    is the grid minimizer under the deterministic tie order (smallest a,
    then largest b).  Largest b matters: whenever the supremum is the
    risk at theta = 0, which is a^2 regardless of b, entire runs of b
    share the identical score, and the optimum b = eta sits at the right
    end of such a run.

    ``workers`` only partitions the sweep across threads; the result is
    bit-identical for any worker count.
    """
    eta = space.eta
    if eta > 0.0 and grid.step > eta:
        raise ValueError(
            f"step {grid.step} exceeds eta {eta}: the grid needs at least two points per axis"
        )
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    axis = grid_axis(eta, grid.step)
    n = len(axis)
    blocks = [(lo, min(lo + _ROW_BLOCK, n)) for lo in range(0, n, _ROW_BLOCK)]

    if workers == 1:
        candidates = [_block_candidate(axis, lo, hi, eta) for lo, hi in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates = list(
                pool.map(lambda blk: _block_candidate(axis, blk[0], blk[1], eta), blocks)
            )

    best = candidates[0]
    for cand in candidates[1:]:
        if _better(cand, best):
            best = cand

    _, a_best, b_best = best
    value = sup_risk(BinaryEstimator(a_best, b_best), space).value
    return NumericSolution(a_best, b_best, value, evaluations=n * n, refined=False)


def _golden_min(
    f: Callable[[float], float], lo: float, hi: float, width_tol: float
) -> tuple[float, float]:
    """Golden-section minimization on [lo, hi] down to bracket ``width_tol``.

    Returns (midpoint of final bracket, final bracket width).  On exactly
    equal probe values the bracket moves right; the objectives here have
    flat valleys whose optimal edge is the right one, so ties must drift
    rightward to land on it.
    """
    width = hi - lo
    if width <= width_tol:
        return 0.5 * (lo + hi), width
    x1 = lo + _INV_PHI2 * width
    x2 = lo + _INV_PHI * width
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(300):
        if f1 < f2:
            hi = x2
            x2, f2 = x1, f1
            width = hi - lo
            x1 = lo + _INV_PHI2 * width
            f1 = f(x1)
        else:
            lo = x1
            x1, f1 = x2, f2
            width = hi - lo
            x2 = lo + _INV_PHI * width
            f2 = f(x2)
        if width <= width_tol or x1 >= x2:
            break
    return 0.5 * (lo + hi), width


def refine(
    space: ParamSpace,
    start: BinaryEstimator,
    tol: float,
    max_sweeps: int = 200,
    trace: list[float] | None = None,
) -> NumericSolution:
    """Polish a candidate by golden-section descent along each coordinate.

    One sweep minimizes along a then along b over the full [0, eta]
    bracket; a coordinate move is accepted only when it strictly lowers
    the objective, so the objective sequence is non-increasing by
    construction and a start that is already optimal is returned
    unchanged.  Line searches shrink their bracket well below ``tol`` (to
    min(tol, 1e-12)) because the objective has kink minima, where the
    achieved value error scales linearly with the bracket width.  The
    sweep loop stops once a full sweep moves neither coordinate by more
    than min(tol, 1e-10).

    Args:
        space: parameter interval.
        start: starting pair; clamped into [0, eta]^2.
        tol: convergence scale; the final brackets are below it.
        max_sweeps: sweep budget; exceeding it raises ConvergenceError.
        trace: optional list collecting the objective after the initial
            evaluation and after every sweep (monotonicity audits).

    Raises:
        ConvergenceError: if the sweep budget is exhausted.
    """
    tol = float(tol)
    if not math.isfinite(tol) or tol <= 0.0:
        raise ValueError(f"tol must be a finite positive real, got {tol}")
    eta = space.eta
    a = min(max(start.a, 0.0), eta)
    b = min(max(start.b, 0.0), eta)

    evals = 0

    def g(x: float, y: float) -> float:
        nonlocal evals
        evals += 1
        return sup_risk(BinaryEstimator(x, y), space).value

    f_cur = g(a, b)
    if trace is not None:
        trace.append(f_cur)

    inner_tol = min(tol, 1e-12)
    move_tol = min(tol, 1e-10)
    for _ in range(max_sweeps):
        a_prev, b_prev = a, b

        cand, width_a = _golden_min(lambda t: g(t, b), 0.0, eta, inner_tol)
        f_cand = g(cand, b)
        if f_cand < f_cur:
            a, f_cur = cand, f_cand

        cand, width_b = _golden_min(lambda t: g(a, t), 0.0, eta, inner_tol)
        f_cand = g(a, cand)
        if f_cand < f_cur:
            b, f_cur = cand, f_cand

        if trace is not None:
            trace.append(f_cur)
        moved = max(abs(a - a_prev), abs(b - b_prev))
        if moved <= move_tol and width_a <= tol and width_b <= tol:
            return NumericSolution(a, b, f_cur, evaluations=evals, refined=True)

    raise ConvergenceError(
        f"refine did not settle within {max_sweeps} sweeps (eta={eta}, tol={tol})"
    )


def general_risk_at(est: GeneralEstimator, theta):
    """Expected squared error of an n-trial estimator at ``theta``.

    R(theta) = sum_k C(n, k) theta^k (1-theta)^(n-k) (theta - d[k])^2.
    Accepts a scalar or an ndarray of thetas in [0, 1]; the terms are all
    nonnegative, so the binomial sum is numerically benign.
    """
    thetas = np.asarray(theta, dtype=float)
    if np.any(thetas < 0.0) or np.any(thetas > 1.0) or not np.all(np.isfinite(thetas)):
        raise ValueError("theta must lie in [0, 1]")
    flat = np.atleast_1d(thetas)
    k = np.arange(est.n + 1)
    pmf = binom.pmf(k[None, :], est.n, flat[:, None])
    sq = (flat[:, None] - np.asarray(est.d)[None, :]) ** 2
    out = np.sum(pmf * sq, axis=1)
    if thetas.ndim == 0:
        return float(out[0])
    return out


def general_sup_risk(
    est: GeneralEstimator, space: ParamSpace, scan_points: int = 4096
) -> SupRiskResult:
    """Supremum of an n-trial estimator's risk over [0, eta] by theta scan.

    The risk is a degree-(n+2) polynomial, so the supremum is located by a
    dense scan (``scan_points`` samples plus both endpoints) and polished
    by a golden-section maximization between the neighbors of the best
    sample.  The reported value is re-evaluated through the scalar risk
    path at the reported theta.  Unlike the n = 1 analysis this is
    resolution-limited plumbing, not an exact computation.
    """
    scan_points = int(scan_points)
    if scan_points < 16:
        raise ValueError(f"scan_points must be at least 16, got {scan_points}")
    eta = space.eta
    thetas = np.linspace(0.0, eta, scan_points + 2)
    risks = general_risk_at(est, thetas)
    i = int(np.argmax(risks))
    lo = float(thetas[max(i - 1, 0)])
    hi = float(thetas[min(i + 1, len(thetas) - 1)])
    theta_p, _ = _golden_min(lambda t: -general_risk_at(est, t), lo, hi, 1e-12)

    # max() keeps the first of equal candidates, so ties prefer endpoints.
    candidates = (
        (general_risk_at(est, 0.0), 0.0, AttainKind.LEFT_ENDPOINT),
        (general_risk_at(est, eta), eta, AttainKind.RIGHT_ENDPOINT),
        (general_risk_at(est, theta_p), theta_p, AttainKind.INTERIOR_VERTEX),
    )
    value, theta_star, kind = max(candidates, key=lambda c: c[0])
    return SupRiskResult(float(value), float(theta_star), kind)


def monte_carlo_risk(
    est: GeneralEstimator, theta: float, samples: int, seed: int
) -> MonteCarloRisk:
    """Seeded Monte Carlo estimate of the risk at ``theta``.

    Draws ``samples`` binomial counts with numpy's PCG64 generator (see
    GENERATOR_NAME), averages (theta - d[k])^2, and reports the standard
    error of that average (zero when samples == 1).  Reproducible for a
    fixed seed.
    """
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    samples = int(samples)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    counts = rng.binomial(est.n, theta, size=samples)
    errors = theta - np.asarray(est.d)[counts]
    values = errors * errors
    mean = float(values.mean())
    if samples == 1:
        return MonteCarloRisk(mean, 0.0)
    return MonteCarloRisk(mean, float(values.std(ddof=1) / math.sqrt(samples)))
