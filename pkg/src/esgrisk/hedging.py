"""Safe-asset calculus: hedge weights, the charity threshold, and
minimum-risk safe-asset selection.

Hedge operations take the measured risk value of the risky position as an
input; because every coherent measure is affine along a blend with a
deterministic position, the weight formula is measure-agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleHedgeError, ParameterError
from .measures import check_lambda


@dataclass(frozen=True)
class SafeAsset:
    """Deterministic (return, sustainability flow) pair."""

    rf_r: float
    rf_esg: float
    label: str = "safe"

    def __post_init__(self):
        if not (math.isfinite(self.rf_r) and math.isfinite(self.rf_esg)):
            raise ParameterError("safe-asset components must be finite")


@dataclass(frozen=True)
class HedgeResult:
    weight: float
    achieved_risk: float
    safe_asset: str


@dataclass(frozen=True)
class SafeAssetChoice:
    label: str
    risk: float
    ties: tuple[str, ...] = ()


def safe_asset_risk(sa: SafeAsset, lam: float) -> float:
    """-((1-lambda) rf_r + lambda rf_esg), the risk any coherent measure
    assigns to a deterministic position."""
    lam = check_lambda(lam)
    return -((1.0 - lam) * sa.rf_r + lam * sa.rf_esg)


def univariate_hedge_weight(rho_val: float, kappa: float, rf_r: float) -> float:
    """Smallest safe-asset weight bringing an affine portfolio risk down
    to kappa; requires -rf_r < kappa <= rho_val."""
    if kappa <= -rf_r:
        raise InfeasibleHedgeError(
            f"kappa={kappa} must exceed the lower bound {-rf_r} (= -rf_r)"
        )
    if kappa > rho_val:
        raise InfeasibleHedgeError(
            f"kappa={kappa} must not exceed the position risk {rho_val}"
        )
    return (rho_val - kappa) / (rho_val + rf_r)


def esg_hedge_weight(
    rho_lambda_val: float, kappa: float, lam: float, sa: SafeAsset
) -> HedgeResult:
    """Bivariate hedge weight; feasibility band is
    -((1-lambda) rf_r + lambda rf_esg) < kappa <= rho_lambda_val."""
    lam = check_lambda(lam)
    sa_return = (1.0 - lam) * sa.rf_r + lam * sa.rf_esg
    if kappa <= -sa_return:
        raise InfeasibleHedgeError(
            f"kappa={kappa} must exceed the lower bound {-sa_return} "
            f"(= safe-asset risk at lambda={lam})"
        )
    if kappa > rho_lambda_val:
        raise InfeasibleHedgeError(
            f"kappa={kappa} must not exceed the position risk {rho_lambda_val}"
        )
    w = (rho_lambda_val - kappa) / (sa_return + rho_lambda_val)
    achieved = (1.0 - w) * rho_lambda_val + w * safe_asset_risk(sa, lam)
    return HedgeResult(weight=w, achieved_risk=achieved, safe_asset=sa.label)


def charity_threshold(rf_esg: float) -> float:
    """Preference level above which a -100%-return safe asset with
    sustainability flow rf_esg has negative risk: 1 / (1 + rf_esg)."""
    if rf_esg <= -1.0:
        raise ParameterError(f"rf_esg must exceed -1, got {rf_esg}")
    return 1.0 / (1.0 + rf_esg)


def select_safe_asset(assets, lam: float) -> SafeAssetChoice:
    """Asset with minimal deterministic risk at the given preference;
    ties are broken by input order and reported."""
    assets = list(assets)
    if not assets:
        raise ParameterError("safe-asset list must be nonempty")
    lam = check_lambda(lam)
    risks = [safe_asset_risk(sa, lam) for sa in assets]
    best = min(risks)
    tied = tuple(sa.label for sa, rk in zip(assets, risks) if rk == best)
    return SafeAssetChoice(label=tied[0], risk=best, ties=tied)
