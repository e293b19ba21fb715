"""Minimax estimation of a Bernoulli proportion bounded above by eta.

The library computes the estimator of a success probability theta in
[0, eta] that minimizes the worst-case squared error from a single trial,
both in closed form and by an independent brute-force oracle, together
with the geometric predicates needed to audit the optimality argument and
a seeded Monte Carlo cross-check.
"""

from .closed_form import (
    Branch,
    EllipseLevel,
    MinimaxSolution,
    branch_formulas,
    case_b_risk_at_half,
    classic_minimax,
    ellipse_residual,
    endpoint_risk_spread,
    hyperbola_gap,
    minimax_n1,
    minimax_value,
    solution_consistency,
)
from .risk import (
    AttainKind,
    BinaryEstimator,
    ParamSpace,
    RiskPolynomial,
    SupRiskResult,
    risk_at,
    risk_curve,
    risk_polynomial,
    sup_risk,
)
from .solvers import (
    GENERATOR_NAME,
    ConvergenceError,
    GeneralEstimator,
    GridSpec,
    MonteCarloRisk,
    NumericSolution,
    general_risk_at,
    general_sup_risk,
    grid_axis,
    grid_minimax,
    monte_carlo_risk,
    refine,
)
from .verification import BATTERY_TOLERANCES, PropertyCheck, run_battery, sweep_values

__version__ = "0.1.0"

__all__ = [
    "AttainKind",
    "BATTERY_TOLERANCES",
    "BinaryEstimator",
    "Branch",
    "ConvergenceError",
    "EllipseLevel",
    "GENERATOR_NAME",
    "GeneralEstimator",
    "GridSpec",
    "MinimaxSolution",
    "MonteCarloRisk",
    "NumericSolution",
    "ParamSpace",
    "PropertyCheck",
    "RiskPolynomial",
    "SupRiskResult",
    "branch_formulas",
    "case_b_risk_at_half",
    "classic_minimax",
    "ellipse_residual",
    "endpoint_risk_spread",
    "general_risk_at",
    "general_sup_risk",
    "grid_axis",
    "grid_minimax",
    "hyperbola_gap",
    "minimax_n1",
    "minimax_value",
    "monte_carlo_risk",
    "refine",
    "risk_at",
    "risk_curve",
    "risk_polynomial",
    "run_battery",
    "solution_consistency",
    "sup_risk",
    "sweep_values",
]
