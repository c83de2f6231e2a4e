"""Independent dual-representation evaluators for the two AVaR extensions.

Both risk envelopes admit an exact greedy solution: sort scenarios by the
relevant outcome ascending, saturate the per-scenario weight bound on the
worst scenarios until the tail mass is exhausted, and split the boundary
atom fractionally.  The envelope for the combined measure constrains a
common factor xi with 0 <= xi <= 1/(1-tau) and E[xi] = 1, applied as
(zeta1, zeta2) = xi (1-lambda, lambda); the envelope for the linear
measure constrains the two components independently with marginal
expectations (1-lambda, lambda) and bounds (1-lambda)/(1-tau),
lambda/(1-tau).

Certificates carry the per-scenario weights so feasibility is verifiable
by inspection; ties in the sort are broken in input order (the objective
is constant across ties, so the value is deterministic).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .measures import check_lambda
from .risk_core import tail_weights
from .scenario_model import BivariateScenarioSet

DUAL_KINDS = ("esg_avar", "esg_avar_l")


@dataclass(frozen=True)
class DualCertificate:
    """Feasible dual weights attaining the envelope supremum."""

    zeta1: np.ndarray
    zeta2: np.ndarray
    value: float
    feasibility_residuals: dict[str, float] = field(default_factory=dict)


def _check_tau(tau: float) -> float:
    if not 0.0 < tau < 1.0:
        raise ParameterError(
            f"dual evaluation requires tau in (0, 1), got {tau}"
        )
    return float(tau)


def _greedy_xi(values: np.ndarray, probs: np.ndarray, tau: float) -> np.ndarray:
    """Per-scenario xi maximizing -E[xi * values] subject to
    0 <= xi <= 1/(1-tau) and E[xi] = 1."""
    order = np.argsort(values, kind="stable")
    w = tail_weights(probs, order, 1.0 - tau)
    xi = np.zeros_like(w)
    pos = probs > 0
    xi[pos] = w[pos] / (probs[pos] * (1.0 - tau))
    return xi


def esg_avar_dual(
    X: BivariateScenarioSet, lam: float, tau: float
) -> DualCertificate:
    """Envelope supremum for the combined AVaR measure."""
    lam = check_lambda(lam)
    tau = _check_tau(tau)
    y = (1.0 - lam) * X.r + lam * X.esg
    xi = _greedy_xi(y, X.probs, tau)
    zeta1 = (1.0 - lam) * xi
    zeta2 = lam * xi
    value = float(-(X.probs @ (zeta1 * X.r + zeta2 * X.esg)))
    cert = DualCertificate(zeta1=zeta1, zeta2=zeta2, value=value)
    return DualCertificate(
        zeta1=zeta1,
        zeta2=zeta2,
        value=value,
        feasibility_residuals=check_envelope(cert, lam, tau, "esg_avar", X),
    )


def esg_avar_l_dual(
    X: BivariateScenarioSet, lam: float, tau: float
) -> DualCertificate:
    """Envelope supremum for the linear-blend AVaR measure: one greedy
    problem per margin, scaled by (1-lambda) and lambda."""
    lam = check_lambda(lam)
    tau = _check_tau(tau)
    zeta1 = (1.0 - lam) * _greedy_xi(X.r, X.probs, tau)
    zeta2 = lam * _greedy_xi(X.esg, X.probs, tau)
    value = float(-(X.probs @ (zeta1 * X.r + zeta2 * X.esg)))
    cert = DualCertificate(zeta1=zeta1, zeta2=zeta2, value=value)
    return DualCertificate(
        zeta1=zeta1,
        zeta2=zeta2,
        value=value,
        feasibility_residuals=check_envelope(cert, lam, tau, "esg_avar_l", X),
    )


def check_envelope(
    cert: DualCertificate,
    lam: float,
    tau: float,
    kind: str,
    X: BivariateScenarioSet,
) -> dict[str, float]:
    """Numeric residual of every envelope constraint (all 0 when feasible).

    Expectation residuals are absolute deviations; bound and sign
    residuals are the worst per-scenario overshoot.
    """
    lam = check_lambda(lam)
    tau = _check_tau(tau)
    if kind not in DUAL_KINDS:
        raise ParameterError(f"unknown dual kind {kind!r}")
    p = X.probs
    z1, z2 = np.asarray(cert.zeta1, float), np.asarray(cert.zeta2, float)
    res = {
        "zeta1_nonneg": float(np.max(np.maximum(-z1, 0.0), initial=0.0)),
        "zeta2_nonneg": float(np.max(np.maximum(-z2, 0.0), initial=0.0)),
        "zeta1_expectation": abs(float(p @ z1) - (1.0 - lam)),
        "zeta2_expectation": abs(float(p @ z2) - lam),
    }
    cap = 1.0 / (1.0 - tau)
    if kind == "esg_avar":
        # zeta must be a common xi scaled by (1-lambda, lambda)
        res["proportionality"] = float(
            np.max(np.abs(lam * z1 - (1.0 - lam) * z2), initial=0.0)
        )
        xi = z1 / (1.0 - lam) if lam < 1.0 else z2 / lam
        res["xi_bound"] = float(np.max(np.maximum(xi - cap, 0.0), initial=0.0))
    else:
        res["zeta1_bound"] = float(
            np.max(np.maximum(z1 - (1.0 - lam) * cap, 0.0), initial=0.0)
        )
        res["zeta2_bound"] = float(
            np.max(np.maximum(z2 - lam * cap, 0.0), initial=0.0)
        )
    return res
