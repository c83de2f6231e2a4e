"""The bivariate measure catalog.

Two extension schemes are applied to average value at risk, variance,
volatility, and the mean: the "combined" scheme evaluates the univariate
measure on the scenario-wise blend Y = (1-lambda) r + lambda esg, while
the "linear" (_l) scheme blends the two marginal measure values.  The
catalog is a closed enumeration so the axiom lab can pair every kind with
its expected property pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .risk_core import DiscreteDistribution, avar, mean, std, variance
from .scenario_model import BivariateScenarioSet

MEASURE_KINDS = (
    "esg_avar",
    "esg_avar_l",
    "esg_variance",
    "esg_sigma",
    "esg_variance_l",
    "esg_sigma_l",
    "esg_mean",
)
AVAR_KINDS = ("esg_avar", "esg_avar_l")


def check_lambda(lam: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must be in [0, 1], got {lam}")
    return float(lam)


@dataclass(frozen=True)
class MeasureSpec:
    """One entry of the measure catalog with its parameters."""

    kind: str
    lam: float
    tau: float | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ParameterError(f"unknown measure kind {self.kind!r}")
        check_lambda(self.lam)
        if self.kind in AVAR_KINDS:
            if self.tau is None or not 0.0 <= self.tau < 1.0:
                raise ParameterError(
                    f"{self.kind} requires tau in [0, 1), got {self.tau}"
                )
        elif self.tau is not None:
            raise ParameterError(f"{self.kind} takes no tau parameter")

    def label(self) -> str:
        if self.kind in AVAR_KINDS:
            return f"{self.kind}(tau={self.tau:g})"
        return self.kind


def combine(X: BivariateScenarioSet, lam: float) -> DiscreteDistribution:
    """Scenario-wise blend Y_i = (1-lambda) r_i + lambda esg_i."""
    lam = check_lambda(lam)
    return DiscreteDistribution(
        values=(1.0 - lam) * X.r + lam * X.esg, probs=X.probs
    )


def _margin(X: BivariateScenarioSet, which: str) -> DiscreteDistribution:
    values = X.r if which == "r" else X.esg
    return DiscreteDistribution(values=values, probs=X.probs)


def esg_avar(X: BivariateScenarioSet, lam: float, tau: float) -> float:
    return avar(combine(X, lam), tau)


def esg_avar_l(X: BivariateScenarioSet, lam: float, tau: float) -> float:
    lam = check_lambda(lam)
    return (1.0 - lam) * avar(_margin(X, "r"), tau) + lam * avar(
        _margin(X, "esg"), tau
    )


def esg_variance(X: BivariateScenarioSet, lam: float) -> float:
    return variance(combine(X, lam))


def esg_sigma(X: BivariateScenarioSet, lam: float) -> float:
    return std(combine(X, lam))


def esg_variance_l(X: BivariateScenarioSet, lam: float) -> float:
    lam = check_lambda(lam)
    return (1.0 - lam) * variance(_margin(X, "r")) + lam * variance(
        _margin(X, "esg")
    )


def esg_sigma_l(X: BivariateScenarioSet, lam: float) -> float:
    return float(np.sqrt(esg_variance_l(X, lam)))


def esg_mean(X: BivariateScenarioSet, lam: float) -> float:
    """Reward measure: (1-lambda) E[r] + lambda E[esg]."""
    lam = check_lambda(lam)
    return (1.0 - lam) * mean(_margin(X, "r")) + lam * mean(_margin(X, "esg"))


def evaluate_measure(spec: MeasureSpec, X: BivariateScenarioSet) -> float:
    if spec.kind == "esg_avar":
        return esg_avar(X, spec.lam, spec.tau)
    if spec.kind == "esg_avar_l":
        return esg_avar_l(X, spec.lam, spec.tau)
    if spec.kind == "esg_variance":
        return esg_variance(X, spec.lam)
    if spec.kind == "esg_sigma":
        return esg_sigma(X, spec.lam)
    if spec.kind == "esg_variance_l":
        return esg_variance_l(X, spec.lam)
    if spec.kind == "esg_sigma_l":
        return esg_sigma_l(X, spec.lam)
    if spec.kind == "esg_mean":
        return esg_mean(X, spec.lam)
    raise ParameterError(f"unknown measure kind {spec.kind!r}")


def zero_esg(X: BivariateScenarioSet) -> BivariateScenarioSet:
    """[r, 0]' projection on the same scenario index."""
    return BivariateScenarioSet(r=X.r, esg=np.zeros(len(X)), probs=X.probs)


def zero_returns(X: BivariateScenarioSet) -> BivariateScenarioSet:
    """[0, esg]' projection on the same scenario index."""
    return BivariateScenarioSet(r=np.zeros(len(X)), esg=X.esg, probs=X.probs)


def pure_risks(
    X: BivariateScenarioSet, lam: float, spec: MeasureSpec
) -> tuple[float, float]:
    """(pure monetary risk, pure ESG risk): the measure applied to
    [r, 0]' and [0, esg]'."""
    if spec.kind not in AVAR_KINDS:
        raise ParameterError(
            f"pure_risks requires an AVaR-kind measure, got {spec.kind!r}"
        )
    monetary = evaluate_measure(spec, zero_esg(X))
    sustainability = evaluate_measure(spec, zero_returns(X))
    return monetary, sustainability
