"""The six reward-risk ratios on bivariate scenario sets.

All except the Sharpe ratio follow the positive-part quotient convention:
numerator clipped at 0 divided by denominator clipped at 0, with
    numerator+ == 0, denominator+ >  0  ->  0
    numerator+ >  0, denominator+ == 0  ->  +inf
    numerator+ == 0, denominator+ == 0  ->  undefined (value None)
The Sharpe ratio is reported signed (clipping the numerator would destroy
its use for ranking losers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .hedging import SafeAsset
from .measures import check_lambda, combine, esg_avar, esg_mean, esg_sigma
from .risk_core import DiscreteDistribution, partial_norm
from .scenario_model import BivariateScenarioSet

RATIO_KINDS = (
    "esg_sharpe",
    "esg_rachev",
    "esg_starr",
    "esg_sortino_satchell",
    "esg_omega",
    "esg_farinelli_tibiletti",
)


@dataclass(frozen=True)
class RatioValue:
    """Extended-valued quotient plus the raw numerator/denominator.

    value is a float, math.inf, or None for the undefined 0/0 case.
    """

    value: float | None
    numerator: float
    denominator: float

    def is_defined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class RatioSpec:
    """One entry of the ratio catalog with its per-kind parameters."""

    kind: str
    lam: float
    safe_asset: SafeAsset | None = None
    beta: float | None = None
    gamma: float | None = None
    alpha: float | None = None
    p: float | None = None
    q: float | None = None
    m: float | None = None
    n: float | None = None
    threshold: float | None = None
    target: SafeAsset | None = None

    def __post_init__(self):
        if self.kind not in RATIO_KINDS:
            raise ParameterError(f"unknown ratio kind {self.kind!r}")
        check_lambda(self.lam)
        if self.kind == "esg_rachev":
            for name, v in (("beta", self.beta), ("gamma", self.gamma)):
                if v is None or not 0.0 <= v < 1.0:
                    raise ParameterError(
                        f"esg_rachev requires {name} in [0, 1), got {v}"
                    )
        if self.kind == "esg_starr":
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ParameterError(
                    f"esg_starr requires alpha in (0, 1), got {self.alpha}"
                )
        if self.kind == "esg_sortino_satchell":
            if self.p is None or self.p <= 0:
                raise ParameterError(
                    f"esg_sortino_satchell requires p > 0, got {self.p}"
                )
        if self.kind == "esg_omega" and self.threshold is None:
            raise ParameterError("esg_omega requires a threshold")
        if self.kind == "esg_farinelli_tibiletti":
            if self.p is None or self.p <= 0 or self.q is None or self.q <= 0:
                raise ParameterError(
                    "esg_farinelli_tibiletti requires p, q > 0"
                )
            if self.m is None or self.n is None:
                raise ParameterError(
                    "esg_farinelli_tibiletti requires thresholds m and n"
                )

    def label(self) -> str:
        if self.kind == "esg_rachev":
            return f"esg_rachev(beta={self.beta:g},gamma={self.gamma:g})"
        if self.kind == "esg_starr":
            return f"esg_starr(alpha={self.alpha:g})"
        return self.kind


def _clipped_quotient(num: float, den: float) -> RatioValue:
    nump, denp = max(num, 0.0), max(den, 0.0)
    if nump == 0.0 and denp == 0.0:
        return RatioValue(value=None, numerator=num, denominator=den)
    if nump == 0.0:
        return RatioValue(value=0.0, numerator=num, denominator=den)
    if denp == 0.0:
        return RatioValue(value=math.inf, numerator=num, denominator=den)
    return RatioValue(value=nump / denp, numerator=num, denominator=den)


def negate(X: BivariateScenarioSet) -> BivariateScenarioSet:
    return BivariateScenarioSet(r=-X.r, esg=-X.esg, probs=X.probs)


def esg_sharpe(X: BivariateScenarioSet, lam: float, sa: SafeAsset) -> RatioValue:
    """Signed excess-mean over blended volatility (no positive parts)."""
    lam = check_lambda(lam)
    num = esg_mean(X, lam) - ((1.0 - lam) * sa.rf_r + lam * sa.rf_esg)
    den = esg_sigma(X, lam)
    if den == 0.0:
        if num == 0.0:
            return RatioValue(value=None, numerator=num, denominator=den)
        return RatioValue(
            value=math.copysign(math.inf, num), numerator=num, denominator=den
        )
    return RatioValue(value=num / den, numerator=num, denominator=den)


def esg_rachev(
    X: BivariateScenarioSet, lam: float, beta: float, gamma: float
) -> RatioValue:
    """Upper-tail AVaR of the negated vector over lower-tail AVaR."""
    num = esg_avar(negate(X), lam, beta)
    den = esg_avar(X, lam, gamma)
    return _clipped_quotient(num, den)


def esg_starr(X: BivariateScenarioSet, lam: float, alpha: float) -> RatioValue:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must be in (0, 1), got {alpha}")
    num = esg_mean(X, lam)
    den = esg_avar(X, lam, alpha)
    return _clipped_quotient(num, den)


def esg_sortino_satchell(
    X: BivariateScenarioSet,
    lam: float,
    p: float,
    target: SafeAsset | None = None,
) -> RatioValue:
    """Clipped mean over the p-norm of the downside of the blend; an
    optional deterministic target shifts both numerator and blend."""
    lam = check_lambda(lam)
    num = esg_mean(X, lam)
    y = combine(X, lam)
    if target is not None:
        shift = (1.0 - lam) * target.rf_r + lam * target.rf_esg
        num -= shift
        y = DiscreteDistribution(values=y.values - shift, probs=y.probs)
    den = partial_norm(y, 0.0, "below", p)
    return _clipped_quotient(num, den)


def esg_omega(
    X: BivariateScenarioSet, lam: float, threshold: float
) -> RatioValue:
    """Expected excess over expected shortfall relative to the threshold."""
    y = combine(X, lam)
    num = float(y.probs @ np.maximum(y.values - threshold, 0.0))
    den = float(y.probs @ np.maximum(threshold - y.values, 0.0))
    return _clipped_quotient(num, den)


def esg_farinelli_tibiletti(
    X: BivariateScenarioSet,
    lam: float,
    m: float,
    n: float,
    p: float,
    q: float,
) -> RatioValue:
    """Upper partial p-norm above m over lower partial q-norm below n;
    reduces to the Omega ratio at p = q = 1, m = n."""
    y = combine(X, lam)
    num = partial_norm(y, m, "above", p)
    den = partial_norm(y, n, "below", q)
    return _clipped_quotient(num, den)


def evaluate_ratio(spec: RatioSpec, X: BivariateScenarioSet) -> RatioValue:
    if spec.kind == "esg_sharpe":
        sa = spec.safe_asset or SafeAsset(0.0, 0.0, "zero")
        return esg_sharpe(X, spec.lam, sa)
    if spec.kind == "esg_rachev":
        return esg_rachev(X, spec.lam, spec.beta, spec.gamma)
    if spec.kind == "esg_starr":
        return esg_starr(X, spec.lam, spec.alpha)
    if spec.kind == "esg_sortino_satchell":
        return esg_sortino_satchell(X, spec.lam, spec.p, spec.target)
    if spec.kind == "esg_omega":
        return esg_omega(X, spec.lam, spec.threshold)
    if spec.kind == "esg_farinelli_tibiletti":
        return esg_farinelli_tibiletti(
            X, spec.lam, spec.m, spec.n, spec.p, spec.q
        )
    raise ParameterError(f"unknown ratio kind {spec.kind!r}")
