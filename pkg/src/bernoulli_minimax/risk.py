"""Squared-error risk of a one-observation binary estimator.

An estimator of a success probability ``theta`` from a single Bernoulli
trial ``X`` is fully described by the pair ``(a, b)``: report ``a`` when
``X = 0`` and ``b`` when ``X = 1``.  Its expected squared error

    E[(theta - delta(X))^2] = (theta - a)^2 (1 - theta) + (theta - b)^2 theta

collapses to a quadratic in ``theta``:

    (2a - 2b + 1) theta^2  +  (b^2 - a^2 - 2a) theta  +  a^2.

The worst case over a bounded parameter interval ``[0, eta]`` therefore
never needs sampling: a convex or linear quadratic peaks at an interval
endpoint, a concave one peaks at its vertex when the vertex lies inside
the interval and at the nearer endpoint otherwise.  ``sup_risk`` performs
exactly this case analysis and reports where the supremum is attained.

All operations are pure functions in IEEE double precision; values are
safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AttainKind",
    "BinaryEstimator",
    "ParamSpace",
    "RiskPolynomial",
    "SupRiskResult",
    "risk_at",
    "risk_curve",
    "risk_polynomial",
    "sup_risk",
]


def _require_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be a finite real, got {x!r}")
    return x


@dataclass(frozen=True, slots=True)
class ParamSpace:
    """The restricted parameter interval [0, eta] for the proportion.

    ``eta`` is a unitless bound with 0 <= eta <= 1; eta = 1 recovers the
    unconstrained problem, eta = 0 collapses the space to a single point.
    """

    eta: float

    def __post_init__(self) -> None:
        eta = _require_finite(self.eta, "eta")
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {eta}")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True, slots=True)
class BinaryEstimator:
    """Estimates for the two outcomes of one Bernoulli trial.

    ``a`` is reported when the trial fails (X = 0), ``b`` when it succeeds
    (X = 1).  Any finite pair is a valid estimator; solvers restrict their
    search to [0, eta]^2 because values outside the parameter interval are
    always improved by clamping to it.
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _require_finite(self.a, "a"))
        object.__setattr__(self, "b", _require_finite(self.b, "b"))


@dataclass(frozen=True, slots=True)
class RiskPolynomial:
    """Coefficients of the quadratic risk c2*theta^2 + c1*theta + c0."""

    c2: float
    c1: float
    c0: float

    def evaluate(self, theta: float) -> float:
        # Horner order (c2*t + c1)*t + c0 is a contract: the vectorized
        # grid sweep in solvers replicates it bit for bit so that grid
        # values and scalar sup_risk values compare exactly.
        return (self.c2 * theta + self.c1) * theta + self.c0


class AttainKind(enum.Enum):
    """Where the supremum of the risk over [0, eta] is attained."""

    LEFT_ENDPOINT = "left-endpoint"
    RIGHT_ENDPOINT = "right-endpoint"
    INTERIOR_VERTEX = "interior-vertex"
    CONSTANT = "constant"


@dataclass(frozen=True, slots=True)
class SupRiskResult:
    """Supremum risk over [0, eta]: value, an attaining theta, and kind.

    ``value == risk_at(est, theta_star)`` holds exactly (same arithmetic
    path), and ``value`` dominates the risk everywhere on the interval.
    """

    value: float
    theta_star: float
    kind: AttainKind


def risk_polynomial(est: BinaryEstimator) -> RiskPolynomial:
    """Quadratic coefficients of the risk of ``est`` in theta.

    c2 = 2a - 2b + 1, c1 = b^2 - a^2 - 2a, c0 = a^2, exactly as obtained
    by expanding (theta-a)^2(1-theta) + (theta-b)^2 theta.
    """
    a, b = est.a, est.b
    c2 = 2.0 * a - 2.0 * b + 1.0
    c1 = b * b - a * a - 2.0 * a
    c0 = a * a
    return RiskPolynomial(c2, c1, c0)


def risk_at(est: BinaryEstimator, theta: float) -> float:
    """Expected squared error of ``est`` at a true proportion ``theta``.

    ``theta`` may be anywhere on the full simplex [0, 1], even when the
    estimator is later judged against a smaller interval; only sup_risk
    restricts attention to [0, eta].

    Raises:
        ValueError: if theta is outside [0, 1].
    """
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    return risk_polynomial(est).evaluate(theta)


def sup_risk(est: BinaryEstimator, space: ParamSpace) -> SupRiskResult:
    """Exact supremum of the risk of ``est`` over [0, eta].

    Case analysis on the leading coefficient c2 = 2a - 2b + 1:

    * c2 = c1 = 0: the risk does not depend on theta at all; reported as
      ``CONSTANT`` with theta_star = 0.
    * c2 >= 0 (convex or linear): the supremum sits at an endpoint; the
      larger of risk(0) and risk(eta) wins, ties go to the left endpoint
      (the supremum is then attained at both ends).
    * c2 < 0 (concave): the vertex -c1/(2 c2) attains the supremum when it
      falls inside [0, eta]; otherwise the risk is monotone on the
      interval and the nearer endpoint wins via the same comparison.
    """
    eta = space.eta
    poly = risk_polynomial(est)
    if poly.c2 == 0.0 and poly.c1 == 0.0:
        return SupRiskResult(risk_at(est, 0.0), 0.0, AttainKind.CONSTANT)
    if poly.c2 < 0.0:
        theta_v = -poly.c1 / (2.0 * poly.c2)
        if 0.0 <= theta_v <= eta:
            return SupRiskResult(risk_at(est, theta_v), theta_v, AttainKind.INTERIOR_VERTEX)
    f_lo = risk_at(est, 0.0)
    f_hi = risk_at(est, eta)
    if f_lo >= f_hi:
        return SupRiskResult(f_lo, 0.0, AttainKind.LEFT_ENDPOINT)
    return SupRiskResult(f_hi, eta, AttainKind.RIGHT_ENDPOINT)


def risk_curve(
    est: BinaryEstimator, space: ParamSpace, points: int
) -> list[tuple[float, float]]:
    """Tabulate the risk at ``points`` evenly spaced thetas from 0 to eta.

    Both endpoints are always included.  Raises ValueError for points < 2.
    """
    points = int(points)
    if points < 2:
        raise ValueError(f"points must be at least 2, got {points}")
    thetas = np.linspace(0.0, space.eta, points)
    return [(float(t), risk_at(est, float(t))) for t in thetas]
