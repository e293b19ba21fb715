"""Closed-form minimax estimation of a bounded Bernoulli proportion.

For one Bernoulli trial with the success probability known to lie in
[0, eta], the estimator minimizing the worst-case squared error is

    delta(0) = sqrt(1 - eta) - (1 - eta),  delta(1) = eta     if eta <= 3/4,
    delta(0) = 1/4,                        delta(1) = 3/4     if eta >  3/4,

with minimax risk (sqrt(1-eta) - (1-eta))^2 and 1/16 respectively.  The
first branch equalizes the risk at the two ends of the interval; that
equal-endpoint locus is a hyperbola in the (a, b) plane and the branch
point sits at its vertex.  The second branch is the classical
constant-risk rule for the unconstrained problem, which stays optimal
once the bound is loose enough (the equal-risk line a = b - 1/2 then cuts
the hyperbola below its vertex, at exactly (1/4, 3/4)).

Besides the solution itself, this module exposes the geometric predicates
the optimality argument rests on, so each step can be audited
numerically:

* ``hyperbola_gap``      -- signed endpoint-risk ordering,
* ``ellipse_residual``   -- level sets of the risk at theta = eta,
* ``case_b_risk_at_half``-- the risk at theta = 1/2, whose lower bound
  1/16 rules out every estimator with b > a + 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .risk import BinaryEstimator, ParamSpace, risk_at, sup_risk

__all__ = [
    "Branch",
    "EllipseLevel",
    "MinimaxSolution",
    "branch_formulas",
    "case_b_risk_at_half",
    "classic_minimax",
    "ellipse_residual",
    "endpoint_risk_spread",
    "hyperbola_gap",
    "minimax_n1",
    "minimax_value",
    "solution_consistency",
]

ETA_BRANCH_POINT = 0.75


class Branch(enum.Enum):
    """Which closed-form branch produced a solution."""

    RESTRICTED = "restricted"  # eta <= 3/4: bound is binding
    UNRESTRICTED = "unrestricted"  # eta > 3/4: classical rule still optimal


@dataclass(frozen=True, slots=True)
class MinimaxSolution:
    """Optimal pair (a*, b*), its worst-case risk, and the branch taken."""

    a_star: float
    b_star: float
    value: float
    branch: Branch

    @property
    def estimator(self) -> BinaryEstimator:
        return BinaryEstimator(self.a_star, self.b_star)


@dataclass(frozen=True, slots=True)
class EllipseLevel:
    """Level set {(a, b): risk at theta = eta equals gamma}.

    The set is an ellipse centered at (eta, eta) with semi-axes
    sqrt(gamma / (1 - eta)) along a and sqrt(gamma / eta) along b; it
    shrinks to the center as gamma -> 0, which is why minimizing the
    worst-case risk amounts to finding the smallest ellipse that still
    touches the feasible region.
    """

    gamma: float
    center: tuple[float, float]
    semi_axes: tuple[float, float]

    @classmethod
    def for_space(cls, space: ParamSpace, gamma: float) -> "EllipseLevel":
        eta = space.eta
        if not 0.0 < eta < 1.0:
            raise ValueError(f"level-set geometry needs 0 < eta < 1, got {eta}")
        gamma = float(gamma)
        if not math.isfinite(gamma) or gamma < 0.0:
            raise ValueError(f"gamma must be a finite nonnegative real, got {gamma}")
        return cls(
            gamma=gamma,
            center=(eta, eta),
            semi_axes=(math.sqrt(gamma / (1.0 - eta)), math.sqrt(gamma / eta)),
        )


def minimax_n1(space: ParamSpace) -> MinimaxSolution:
    """Minimax estimator of a proportion in [0, eta] from one trial.

    The branch boundary is inclusive at eta = 3/4, where both formulas
    coincide exactly at (1/4, 3/4) with value 1/16.
    """
    eta = space.eta
    if eta <= ETA_BRANCH_POINT:
        u = 1.0 - eta
        a_star = math.sqrt(u) - u
        return MinimaxSolution(a_star, eta, a_star * a_star, Branch.RESTRICTED)
    return MinimaxSolution(0.25, 0.75, 0.0625, Branch.UNRESTRICTED)


def minimax_value(space: ParamSpace) -> float:
    """Worst-case risk of the minimax estimator for [0, eta].

    Equals (sqrt(1-eta) - (1-eta))^2 for eta <= 3/4 and 1/16 beyond; the
    two expressions agree at the branch point.
    """
    return minimax_n1(space).value


def classic_minimax(n: int, xbar: float) -> float:
    """Constant-risk minimax estimate from n unconstrained trials.

    Shrinks the sample mean toward 1/2:

        (sqrt(n) * xbar + 1/2) / (sqrt(n) + 1)

    The resulting risk, 1 / (4 (sqrt(n) + 1)^2), does not depend on the
    true proportion, which is exactly what makes the rule minimax over
    the full interval [0, 1].

    Args:
        n: number of trials, n >= 1.
        xbar: observed success fraction in [0, 1] (a count k is passed
            as k / n).
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    xbar = float(xbar)
    if not 0.0 <= xbar <= 1.0:
        raise ValueError(f"xbar must lie in [0, 1], got {xbar}")
    r = math.sqrt(n)
    return (r * xbar + 0.5) / (r + 1.0)


def hyperbola_gap(est: BinaryEstimator, space: ParamSpace) -> float:
    """Signed margin of the endpoint-risk comparison.

    Returns (a + 1 - eta)^2 - (b - eta)^2 - (1 - eta).  For eta > 0 this
    equals (risk(0) - risk(eta)) / eta identically, so its sign tells
    which end of the parameter interval carries the larger risk; the zero
    set is a hyperbola whose vertex (sqrt(1-eta) - (1-eta), eta) is the
    restricted-branch optimum.
    """
    eta = space.eta
    t0 = est.a + (1.0 - eta)
    t1 = est.b - eta
    return t0 * t0 - t1 * t1 - (1.0 - eta)


def ellipse_residual(est: BinaryEstimator, space: ParamSpace, gamma: float) -> float:
    """Deviation of (a, b) from the gamma level set of the risk at eta.

    Returns (1-eta)(a-eta)^2 / gamma + eta (b-eta)^2 / gamma - 1, which is
    zero exactly when risk_at(est, eta) == gamma.  The center (eta, eta)
    gives -1 for every gamma.

    Raises:
        ValueError: for eta in {0, 1} or gamma <= 0 (degenerate ellipse).
    """
    eta = space.eta
    if not 0.0 < eta < 1.0:
        raise ValueError(f"ellipse geometry needs 0 < eta < 1, got {eta}")
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= 0.0:
        raise ValueError(f"gamma must be a finite positive real, got {gamma}")
    da = est.a - eta
    db = est.b - eta
    return (1.0 - eta) * da * da / gamma + eta * db * db / gamma - 1.0


def case_b_risk_at_half(est: BinaryEstimator) -> float:
    """Risk at theta = 1/2 in completed-square form.

    Returns ((a - 1/2)^2 + (b - 1/2)^2) / 2, which agrees with
    risk_at(est, 1/2).  Whenever b > a + 1/2 this exceeds
    (a - 1/4)^2 + 1/16 >= 1/16, so no such estimator can beat the
    closed-form solution once 1/2 lies inside the parameter interval.
    """
    da = est.a - 0.5
    db = est.b - 0.5
    return 0.5 * (da * da + db * db)


def branch_formulas(eta: float) -> tuple[MinimaxSolution, MinimaxSolution]:
    """Both branch formulas evaluated at the same eta (continuity checks)."""
    u = 1.0 - eta
    a_r = math.sqrt(u) - u
    restricted = MinimaxSolution(a_r, eta, a_r * a_r, Branch.RESTRICTED)
    unrestricted = MinimaxSolution(0.25, 0.75, 0.0625, Branch.UNRESTRICTED)
    return restricted, unrestricted


def solution_consistency(space: ParamSpace) -> float:
    """|closed-form value - exact sup-risk of the closed-form estimator|.

    A self-check helper: the reported minimax value must be the actual
    worst-case risk of the reported estimator.
    """
    sol = minimax_n1(space)
    return abs(sol.value - sup_risk(sol.estimator, space).value)


def endpoint_risk_spread(space: ParamSpace) -> float:
    """|risk(0) - risk(eta)| of the closed-form estimator.

    Zero (to rounding) on the restricted branch, where optimality forces
    the two endpoint risks to balance.
    """
    est = minimax_n1(space).estimator
    return abs(risk_at(est, 0.0) - risk_at(est, space.eta))
