"""Bivariate data model: panels of (return, ESG) series, normalization,
historical-simulation scenario sets, and descriptive statistics.

ESG scores arrive on a raw provider scale and are affinely rescaled to
[-1/c, 1/c] with c = 252 so that a daily sustainability flow has a
magnitude comparable to a daily log-return.  Annualization constants are
fixed at 252 and sqrt(252).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DataError,
    InsufficientDataError,
    NotFoundError,
    PanelParseError,
    ParameterError,
)
from .risk_core import PROB_TOL, _as_readonly

TRADING_DAYS = 252
MIN_OBSERVATIONS = 30


@dataclass(frozen=True)
class NormalizationConfig:
    """Affine map from the raw ESG scale [raw_min, raw_max] onto
    [-1/c, 1/c]; the midpoint of the raw scale maps to 0."""

    raw_min: float = 0.0
    raw_max: float = 100.0
    c: int = TRADING_DAYS

    def __post_init__(self):
        if not self.raw_min < self.raw_max:
            raise ParameterError("raw_min must be strictly below raw_max")
        if self.c < 1:
            raise ParameterError("c must be a positive integer")


@dataclass(frozen=True)
class BivariateScenarioSet:
    """Discrete joint distribution of (return, esg) pairs.

    r and esg are parallel per-scenario arrays; probs are nonnegative and
    sum to 1 within 1e-12.
    """

    r: np.ndarray
    esg: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", _as_readonly(self.r))
        object.__setattr__(self, "esg", _as_readonly(self.esg))
        object.__setattr__(self, "probs", _as_readonly(self.probs))
        if self.r.ndim != 1 or self.r.size == 0:
            raise ParameterError("scenario set must be nonempty")
        if self.esg.shape != self.r.shape or self.probs.shape != self.r.shape:
            raise ParameterError("r, esg and probs must have the same length")
        if not (np.all(np.isfinite(self.r)) and np.all(np.isfinite(self.esg))):
            raise ParameterError("scenario values must be finite")
        if np.any(self.probs < 0):
            raise ParameterError("probabilities must be nonnegative")
        if abs(self.probs.sum() - 1.0) > PROB_TOL:
            raise ParameterError(
                f"probabilities must sum to 1 (got {self.probs.sum()!r})"
            )

    def __len__(self) -> int:
        return self.r.size


@dataclass(frozen=True)
class AssetPanel:
    """Aligned per-asset daily series of returns and normalized ESG flows.

    All per-asset arrays share the common `dates` index (inner join at
    ingestion).
    """

    tickers: tuple[str, ...]
    dates: tuple[str, ...]
    returns: dict[str, np.ndarray]
    esg: dict[str, np.ndarray]


@dataclass(frozen=True)
class AssetStats:
    """Annualized per-asset summary; corr is None for zero-variance series."""

    ticker: str
    mean_return: float
    std_return: float
    mean_esg: float
    std_esg: float
    corr: float | None


@dataclass(frozen=True)
class DescriptiveStats:
    rows: tuple[AssetStats, ...] = field(default_factory=tuple)

    def by_ticker(self, ticker: str) -> AssetStats:
        for row in self.rows:
            if row.ticker == ticker:
                return row
        raise NotFoundError(f"no stats for ticker {ticker!r}")


def normalize_esg(raw_series, cfg: NormalizationConfig) -> np.ndarray:
    """Affinely map raw scores onto [-1/c, 1/c]; strictly increasing.

    Raises ParameterError naming the first out-of-range index.
    """
    raw = np.asarray(raw_series, dtype=float)
    bad = np.nonzero(~((raw >= cfg.raw_min) & (raw <= cfg.raw_max)))[0]
    if bad.size:
        i = int(bad[0])
        raise ParameterError(
            f"raw ESG value {raw[i]!r} at index {i} outside "
            f"[{cfg.raw_min}, {cfg.raw_max}]"
        )
    half = (cfg.raw_max - cfg.raw_min) / 2.0
    return (raw - cfg.raw_min - half) / half / cfg.c


def load_panel(
    path, cfg: NormalizationConfig, min_obs: int = MIN_OBSERVATIONS
) -> AssetPanel:
    """Read a `date,ticker,ret,esg_raw` CSV into an aligned panel.

    Dates are inner-joined across tickers; each asset must retain at least
    `min_obs` aligned observations.  ESG is normalized via normalize_esg,
    returns pass through unchanged.
    """
    per_asset: dict[str, dict[str, tuple[float, float]]] = {}
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from None
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != [
            "date",
            "ticker",
            "ret",
            "esg_raw",
        ]:
            raise PanelParseError(
                f"{path}: expected header 'date,ticker,ret,esg_raw'"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise PanelParseError(f"{path}:{lineno}: expected 4 fields")
            date, ticker = row[0].strip(), row[1].strip()
            try:
                ret = float(row[2])
                esg_raw = float(row[3])
            except ValueError as exc:
                raise PanelParseError(
                    f"{path}:{lineno}: non-numeric cell ({exc})"
                ) from None
            if not (math.isfinite(ret) and math.isfinite(esg_raw)):
                raise PanelParseError(f"{path}:{lineno}: non-finite cell")
            per_asset.setdefault(ticker, {})[date] = (ret, esg_raw)

    if not per_asset:
        raise InsufficientDataError(f"{path}: insufficient data (empty panel)")

    tickers = tuple(sorted(per_asset))
    common = set(per_asset[tickers[0]])
    for t in tickers[1:]:
        common &= set(per_asset[t])
    dates = tuple(sorted(common))
    if len(dates) < min_obs:
        raise InsufficientDataError(
            f"{path}: insufficient data ({len(dates)} aligned observations, "
            f"need {min_obs})"
        )

    returns, esg = {}, {}
    for t in tickers:
        rows = per_asset[t]
        returns[t] = _as_readonly([rows[d][0] for d in dates])
        esg[t] = normalize_esg([rows[d][1] for d in dates], cfg)
        esg[t].flags.writeable = False
    return AssetPanel(tickers=tickers, dates=dates, returns=returns, esg=esg)


def to_scenarios(panel: AssetPanel, ticker: str) -> BivariateScenarioSet:
    """Historical-simulation scenario set: one equal-probability scenario
    per date, preserving the observed (return, esg) pairing."""
    if ticker not in panel.returns:
        raise NotFoundError(f"ticker {ticker!r} not in panel")
    n = len(panel.dates)
    return BivariateScenarioSet(
        r=panel.returns[ticker],
        esg=panel.esg[ticker],
        probs=np.full(n, 1.0 / n),
    )


def _sample_std(x: np.ndarray) -> float:
    # Sample (ddof=1) convention, per the descriptive-table reporting;
    # measures elsewhere use the population convention.  Constant series
    # report exactly 0 (the mean of identical floats can carry rounding
    # residue, which would otherwise leak into the zero-variance marker).
    if x.size < 2 or np.all(x == x[0]):
        return 0.0
    return float(np.std(x, ddof=1))


def descriptive_stats(panel: AssetPanel) -> DescriptiveStats:
    """Annualized mean (x252) and std (x sqrt(252)) of daily returns and
    ESG flows, plus the Pearson correlation of the daily pairs."""
    if len(panel.dates) < 2:
        raise InsufficientDataError("need at least 2 observations per asset")
    rows = []
    root = math.sqrt(TRADING_DAYS)
    for t in panel.tickers:
        r, e = panel.returns[t], panel.esg[t]
        sr, se = _sample_std(r), _sample_std(e)
        if sr == 0.0 or se == 0.0:
            corr = None
        else:
            corr = float(np.corrcoef(r, e)[0, 1])
        rows.append(
            AssetStats(
                ticker=t,
                mean_return=float(np.mean(r)) * TRADING_DAYS,
                std_return=sr * root,
                mean_esg=float(np.mean(e)) * TRADING_DAYS,
                std_esg=se * root,
                corr=corr,
            )
        )
    return DescriptiveStats(rows=tuple(rows))


def correlation_matrix(panel: AssetPanel) -> tuple[list[str], np.ndarray]:
    """Block correlation matrix over [all returns, all ESG series].

    Size 2n x 2n with unit diagonal; entries involving a zero-variance
    series are NaN markers.  Returns (labels, matrix).
    """
    if len(panel.dates) < 2:
        raise InsufficientDataError("need at least 2 observations per asset")
    series = [panel.returns[t] for t in panel.tickers]
    series += [panel.esg[t] for t in panel.tickers]
    labels = [f"ret:{t}" for t in panel.tickers]
    labels += [f"esg:{t}" for t in panel.tickers]
    k = len(series)
    out = np.eye(k)
    stds = [_sample_std(s) for s in series]
    for i in range(k):
        for j in range(i + 1, k):
            if stds[i] == 0.0 or stds[j] == 0.0:
                c = np.nan
            else:
                c = float(np.corrcoef(series[i], series[j])[0, 1])
            out[i, j] = out[j, i] = c
    return labels, out
