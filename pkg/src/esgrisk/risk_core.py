"""Univariate building blocks on discrete distributions.

Everything operates on a known discrete law (values with probabilities),
not on a sample: moments use the population convention, and average value
at risk is evaluated exactly by sorting and splitting the boundary atom
fractionally so that primal and dual evaluations agree to machine
precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

PROB_TOL = 1e-12


def _as_readonly(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class DiscreteDistribution:
    """Discrete distribution: outcome values with matching probabilities.

    Probabilities must be nonnegative and sum to 1 within 1e-12.
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_readonly(self.values))
        object.__setattr__(self, "probs", _as_readonly(self.probs))
        if self.values.ndim != 1 or self.values.size == 0:
            raise ParameterError("values must be a nonempty 1-d sequence")
        if self.probs.shape != self.values.shape:
            raise ParameterError("values and probs must have the same length")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("values must be finite")
        if np.any(self.probs < 0):
            raise ParameterError("probabilities must be nonnegative")
        if abs(self.probs.sum() - 1.0) > PROB_TOL:
            raise ParameterError(
                f"probabilities must sum to 1 (got {self.probs.sum()!r})"
            )

    def __len__(self) -> int:
        return self.values.size


def mean(d: DiscreteDistribution) -> float:
    return float(d.probs @ d.values)


def variance(d: DiscreteDistribution) -> float:
    """Population variance E[Y^2] - (E[Y])^2, floored at 0."""
    m = d.probs @ d.values
    v = d.probs @ (d.values - m) ** 2
    return float(max(v, 0.0))


def std(d: DiscreteDistribution) -> float:
    return float(np.sqrt(variance(d)))


def tail_weights(probs: np.ndarray, order: np.ndarray, mass: float) -> np.ndarray:
    """Mass assigned to each atom when the worst `mass` probability is
    accumulated along `order`, splitting the boundary atom fractionally.

    Returned in the original (unsorted) indexing.
    """
    p = probs[order]
    cum = np.cumsum(p)
    w_sorted = np.clip(np.minimum(cum, mass) - (cum - p), 0.0, None)
    w = np.empty_like(w_sorted)
    w[order] = w_sorted
    return w


def avar(d: DiscreteDistribution, tau: float) -> float:
    """Average value at risk at confidence level tau in [0, 1).

    Negated mean of the worst (1 - tau) probability mass, computed exactly
    (the boundary atom is split fractionally).  tau = 0 gives -E[Y].
    """
    if not 0.0 <= tau < 1.0:
        raise ParameterError(f"tau must be in [0, 1), got {tau}")
    if tau == 0.0:
        return -mean(d)
    m = 1.0 - tau
    order = np.argsort(d.values, kind="stable")
    w = tail_weights(d.probs, order, m)
    return float(-(w @ d.values) / m)


def partial_norm(
    d: DiscreteDistribution, threshold: float, side: str, order: float
) -> float:
    """Partial-moment norm (E[max(+-(Y - threshold), 0)^p])^(1/p).

    side="below" measures shortfall under the threshold, side="above"
    measures exceedance over it.
    """
    if order <= 0:
        raise ParameterError(f"norm order must be positive, got {order}")
    if side == "below":
        dev = np.maximum(threshold - d.values, 0.0)
    elif side == "above":
        dev = np.maximum(d.values - threshold, 0.0)
    else:
        raise ParameterError(f"side must be 'above' or 'below', got {side!r}")
    return float((d.probs @ dev**order) ** (1.0 / order))
