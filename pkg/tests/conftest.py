"""Shared helpers: independent oracles and random-instance generators."""

from __future__ import annotations

import numpy as np
import pytest

from esgrisk import BivariateScenarioSet

ESG_BOUND = 1.0 / 252.0


def avar_oracle(values, probs, tau: float) -> float:
    """Independent average-value-at-risk evaluation via the variational
    form: with loss L = -Y,
        AVaR_tau = min_c  c + E[(L - c)^+] / (1 - tau),
    and the minimum over c is attained at an atom of L.
    """
    values = np.asarray(values, float)
    probs = np.asarray(probs, float)
    loss = -values
    if tau == 0.0:
        return float(probs @ loss)
    best = np.inf
    for c in loss:
        cand = c + float(probs @ np.maximum(loss - c, 0.0)) / (1.0 - tau)
        best = min(best, cand)
    return best


def rand_probs(rng, n: int) -> np.ndarray:
    if rng.random() < 0.5:
        return np.full(n, 1.0 / n)
    w = rng.random(n) + 1e-3
    return w / w.sum()


def rand_X(rng, n_max: int = 64, n_min: int = 2) -> BivariateScenarioSet:
    n = int(rng.integers(n_min, n_max + 1))
    return BivariateScenarioSet(
        r=np.clip(rng.standard_t(3, n) * 0.05, -0.5, 0.5),
        esg=rng.uniform(-ESG_BOUND, ESG_BOUND, n),
        probs=rand_probs(rng, n),
    )


def make_scen(r, esg, probs=None) -> BivariateScenarioSet:
    r = np.asarray(r, float)
    if probs is None:
        probs = np.full(r.size, 1.0 / r.size)
    return BivariateScenarioSet(r=r, esg=np.asarray(esg, float),
                                probs=np.asarray(probs, float))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def write_panel(path, rows) -> None:
    """rows: iterable of (date, ticker, ret, esg_raw)."""
    with open(path, "w", newline="") as fh:
        fh.write("date,ticker,ret,esg_raw\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")


def synth_panel_rows(tickers, n_dates, seed=0, esg_level=50.0):
    """Deterministic small panel rows for CLI tests."""
    gen = np.random.default_rng(seed)
    dates = [f"2022-01-{i:02d}" if i <= 28 else f"2022-02-{i - 28:02d}"
             for i in range(1, n_dates + 1)]
    if n_dates > 56:
        raise ValueError("synth_panel_rows supports at most 56 dates")
    rows = []
    for t in tickers:
        rets = gen.normal(0.0005, 0.01, n_dates)
        esg = np.clip(gen.normal(esg_level, 5.0, n_dates), 0.0, 100.0)
        for d, r, e in zip(dates, rets, esg):
            rows.append((d, t, f"{r:.8f}", f"{e:.4f}"))
    return rows
