"""Command-line surface for batch runs over (return, ESG) panels.

Subcommands: stats, rank, ratio (rank restricted to the ratio catalog),
hedge, duality, axioms.  All numeric output is printed with 9 significant
digits; runs are deterministic given (inputs, flags, seed).

Exit statuses: 0 success, 1 usage/parameter error, 2 data/ingestion
error, 3 property contradiction (axiom matrix mismatch or duality gap),
4 inconclusive axiom cell (a blank cell with no counterexample found
within budget).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .axiom_lab import DUAL_TAU_GRID, LAMBDA_GRID, reproduce_property_matrix
from .dual_oracle import esg_avar_dual, esg_avar_l_dual
from .errors import (
    DataError,
    EsgRiskError,
    InfeasibleHedgeError,
    NotFoundError,
    ParameterError,
)
from .hedging import SafeAsset, esg_hedge_weight, select_safe_asset
from .measures import (
    AVAR_KINDS,
    MEASURE_KINDS,
    MeasureSpec,
    esg_avar,
    esg_avar_l,
    evaluate_measure,
)
from .ratios import RATIO_KINDS, RatioSpec, evaluate_ratio
from .scenario_model import (
    BivariateScenarioSet,
    NormalizationConfig,
    descriptive_stats,
    load_panel,
    to_scenarios,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONTRADICTION = 3
EXIT_INCONCLUSIVE = 4

DUALITY_GAP_TOL = 1e-9
DEFAULT_LAMBDA_STEPS = 21


def fmt(x) -> str:
    """9-significant-digit rendering; empty for undefined values."""
    if x is None:
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.9g}"


def _json_number(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(fmt(x))


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2 (2 is reserved for
    # data errors here)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(p: _Parser, with_panel: bool = True) -> None:
    if with_panel:
        p.add_argument("--input", required=True, help="panel CSV path")
        p.add_argument("--esg-min", type=float, default=0.0,
                       help="raw ESG scale lower bound")
        p.add_argument("--esg-max", type=float, default=100.0,
                       help="raw ESG scale upper bound")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_metric_params(p: _Parser) -> None:
    p.add_argument("--metric", required=True, help="measure or ratio kind")
    p.add_argument("--lambda-grid", default=None,
                   help="comma-separated preference weights in [0,1]")
    p.add_argument("--lambda-steps", type=int, default=DEFAULT_LAMBDA_STEPS,
                   help="evenly spaced grid size over [0,1]")
    p.add_argument("--tau", type=float, default=None,
                   help="AVaR confidence level")
    p.add_argument("--beta", type=float, default=0.95)
    p.add_argument("--gamma", type=float, default=0.95)
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--m", type=float, default=0.0)
    p.add_argument("--n", type=float, default=0.0)
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--rf-r", type=float, default=0.0,
                   help="safe return for the Sharpe excess mean")
    p.add_argument("--rf-esg", type=float, default=0.0,
                   help="safe ESG flow for the Sharpe excess mean")


def build_parser() -> _Parser:
    parser = _Parser(prog="esgrisk",
                     description="scenario-based (return, ESG) risk analytics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[], help="per-asset annualized stats")
    _add_common(p)

    for name, help_text in (
        ("rank", "lambda-swept rankings by any catalog metric"),
        ("ratio", "rank restricted to the reward-risk ratio catalog"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        _add_metric_params(p)
        p.add_argument("--plot", default=None,
                       help="also render rank-line figure to this file")

    p = sub.add_parser("hedge", help="safe-asset hedge to a target risk")
    _add_common(p)
    p.add_argument("--ticker", required=True)
    p.add_argument("--metric", default="esg_avar", choices=AVAR_KINDS)
    p.add_argument("--tau", type=float, default=0.95)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True,
                   help="target risk level")
    p.add_argument("--safe-assets", required=True,
                   help="CSV with header label,rf_r,rf_esg")

    p = sub.add_parser("duality", help="primal vs dual gap report")
    _add_common(p, with_panel=False)
    p.add_argument("--n", type=int, default=200,
                   help="max scenarios per random instance")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)

    p = sub.add_parser("axioms", help="reproduce a property matrix")
    _add_common(p, with_panel=False)
    p.add_argument("--scope", required=True,
                   choices=("risk_measures", "ratios"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(args):
    cfg = NormalizationConfig(raw_min=args.esg_min, raw_max=args.esg_max)
    return load_panel(args.input, cfg)


def _lambda_grid(args) -> list[float]:
    if args.lambda_grid is not None:
        try:
            grid = [float(tok) for tok in args.lambda_grid.split(",") if tok]
        except ValueError as exc:
            raise ParameterError(f"bad --lambda-grid: {exc}") from None
        if not grid:
            raise ParameterError("--lambda-grid must be nonempty")
    else:
        if args.lambda_steps < 2:
            raise ParameterError("--lambda-steps must be at least 2")
        grid = [i / (args.lambda_steps - 1) for i in range(args.lambda_steps)]
    for lam in grid:
        if not 0.0 <= lam <= 1.0:
            raise ParameterError(f"lambda {lam} outside [0, 1]")
    return grid


def _metric_spec(args, lam: float):
    """(spec, direction) for one grid point; usage errors list the catalog."""
    kind = args.metric
    if kind in MEASURE_KINDS:
        if kind in AVAR_KINDS:
            if args.tau is None:
                raise ParameterError(f"{kind} requires --tau")
            spec = MeasureSpec(kind=kind, lam=lam, tau=args.tau)
        else:
            spec = MeasureSpec(kind=kind, lam=lam)
        direction = (
            "descending-reward" if kind == "esg_mean" else "ascending-risk"
        )
        return spec, direction
    if kind in RATIO_KINDS:
        spec = RatioSpec(
            kind=kind,
            lam=lam,
            safe_asset=SafeAsset(args.rf_r, args.rf_esg, "safe")
            if kind == "esg_sharpe"
            else None,
            beta=args.beta if kind == "esg_rachev" else None,
            gamma=args.gamma if kind == "esg_rachev" else None,
            alpha=args.alpha if kind == "esg_starr" else None,
            p=args.p
            if kind in ("esg_sortino_satchell", "esg_farinelli_tibiletti")
            else None,
            q=args.q if kind == "esg_farinelli_tibiletti" else None,
            m=args.m if kind == "esg_farinelli_tibiletti" else None,
            n=args.n if kind == "esg_farinelli_tibiletti" else None,
            threshold=args.threshold if kind == "esg_omega" else None,
        )
        return spec, "descending-reward"
    raise ParameterError(
        f"unknown metric {kind!r}; catalog: "
        + ", ".join(MEASURE_KINDS + RATIO_KINDS)
    )


def _metric_value(spec, X: BivariateScenarioSet) -> float | None:
    if isinstance(spec, MeasureSpec):
        return evaluate_measure(spec, X)
    return evaluate_ratio(spec, X).value


def _rank_entries(values: dict[str, float | None], direction: str):
    """Ordered (rank, ticker, value); ties and undefined values sort by
    ticker, undefined values always last."""
    def key(ticker):
        v = values[ticker]
        if v is None:
            return (1, 0.0, ticker)
        ordered = v if direction == "ascending-risk" else -v
        return (0, ordered, ticker)

    ordered = sorted(values, key=key)
    return [(i + 1, t, values[t]) for i, t in enumerate(ordered)]


# ---------------------------------------------------------------------------
# subcommands


def cmd_stats(args) -> int:
    panel = _load(args)
    stats = descriptive_stats(panel)
    if args.format == "json":
        payload = [
            {
                "ticker": s.ticker,
                "mean_return": _json_number(s.mean_return),
                "std_return": _json_number(s.std_return),
                "mean_esg": _json_number(s.mean_esg),
                "std_esg": _json_number(s.std_esg),
                "corr": _json_number(s.corr),
            }
            for s in stats.rows
        ]
        _emit(_json_dumps(payload), args.out)
        return EXIT_OK
    lines = ["ticker,mean_return,std_return,mean_esg,std_esg,corr"]
    for s in stats.rows:
        lines.append(
            f"{s.ticker},{fmt(s.mean_return)},{fmt(s.std_return)},"
            f"{fmt(s.mean_esg)},{fmt(s.std_esg)},{fmt(s.corr)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_rank(args, ratios_only: bool = False) -> int:
    if ratios_only and args.metric not in RATIO_KINDS:
        raise ParameterError(
            f"{args.metric!r} is not a ratio; catalog: "
            + ", ".join(RATIO_KINDS)
        )
    grid = _lambda_grid(args)
    panel = _load(args)
    scenarios = {t: to_scenarios(panel, t) for t in panel.tickers}

    per_lambda = []
    metric_label = None
    for lam in grid:
        spec, direction = _metric_spec(args, lam)
        metric_label = spec.label()
        values = {t: _metric_value(spec, X) for t, X in scenarios.items()}
        per_lambda.append((lam, direction, _rank_entries(values, direction)))

    direction = per_lambda[0][1]
    if args.format == "json":
        payload = {
            "metric": metric_label,
            "direction": direction,
            "lambda_grid": [_json_number(l) for l in grid],
            "rankings": [
                {
                    "lambda": _json_number(lam),
                    "entries": [
                        {
                            "rank": rank,
                            "ticker": ticker,
                            "value": _json_number(v),
                        }
                        for rank, ticker, v in entries
                    ],
                }
                for lam, _, entries in per_lambda
            ],
        }
        text = _json_dumps(payload)
    else:
        lines = [
            f"# metric={metric_label} direction={direction}",
            "lambda,rank,ticker,value",
        ]
        for lam, _, entries in per_lambda:
            for rank, ticker, v in entries:
                lines.append(f"{fmt(lam)},{rank},{ticker},{fmt(v)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)

    if args.plot is not None:
        from .plotting import render_rank_lines

        values_by_ticker = {t: [] for t in panel.tickers}
        for _, _, entries in per_lambda:
            for _, ticker, v in entries:
                values_by_ticker[ticker].append(
                    math.nan if v is None else v
                )
        render_rank_lines(grid, values_by_ticker, metric_label, args.plot)
    return EXIT_OK


def load_safe_assets(path) -> list[SafeAsset]:
    """Read a `label,rf_r,rf_esg` CSV into safe assets, in file order."""
    import csv

    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != [
            "label",
            "rf_r",
            "rf_esg",
        ]:
            raise DataError(f"{path}: expected header 'label,rf_r,rf_esg'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise DataError(f"{path}:{lineno}: expected 3 fields")
            try:
                out.append(SafeAsset(float(row[1]), float(row[2]),
                                     row[0].strip()))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
    if not out:
        raise DataError(f"{path}: no safe assets")
    return out


def cmd_hedge(args) -> int:
    panel = _load(args)
    X = to_scenarios(panel, args.ticker)
    if args.metric == "esg_avar":
        rho = esg_avar(X, args.lam, args.tau)
    else:
        rho = esg_avar_l(X, args.lam, args.tau)
    assets = load_safe_assets(args.safe_assets)
    choice = select_safe_asset(assets, args.lam)
    sa = next(a for a in assets if a.label == choice.label)
    result = esg_hedge_weight(rho, args.kappa, args.lam, sa)
    if args.format == "json":
        payload = {
            "ticker": args.ticker,
            "metric": f"{args.metric}(tau={args.tau:g})",
            "lambda": _json_number(args.lam),
            "rho": _json_number(rho),
            "kappa": _json_number(args.kappa),
            "safe_asset": result.safe_asset,
            "safe_asset_ties": list(choice.ties),
            "weight": _json_number(result.weight),
            "achieved_risk": _json_number(result.achieved_risk),
        }
        _emit(_json_dumps(payload), args.out)
        return EXIT_OK
    lines = [
        "ticker,metric,lambda,rho,kappa,safe_asset,weight,achieved_risk",
        f"{args.ticker},{args.metric}(tau={args.tau:g}),{fmt(args.lam)},"
        f"{fmt(rho)},{fmt(args.kappa)},{result.safe_asset},"
        f"{fmt(result.weight)},{fmt(result.achieved_risk)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _duality_instances(args):
    """Deterministic random instances; each trial uses the substream
    keyed by (seed, trial)."""
    lams = (args.lam,) if args.lam is not None else LAMBDA_GRID
    taus = (args.tau,) if args.tau is not None else DUAL_TAU_GRID + (0.99,)
    for i in range(args.trials):
        rng = np.random.default_rng((args.seed, i))
        n = int(rng.integers(1, args.n + 1))
        r = np.clip(rng.standard_t(3, n) * 0.05, -0.5, 0.5)
        esg = rng.uniform(-1.0 / 252.0, 1.0 / 252.0, n)
        if rng.random() < 0.5 or n == 1:
            probs = np.full(n, 1.0 / n)
        else:
            w = rng.random(n) + 1e-3
            probs = w / w.sum()
        lam = lams[i % len(lams)]
        tau = taus[(i // len(lams)) % len(taus)]
        yield BivariateScenarioSet(r=r, esg=esg, probs=probs), lam, tau


def cmd_duality(args) -> int:
    if args.trials < 1:
        raise ParameterError("--trials must be positive")
    if args.n < 1:
        raise ParameterError("--n must be positive")
    gaps = {"esg_avar": 0.0, "esg_avar_l": 0.0}
    residuals = {"esg_avar": 0.0, "esg_avar_l": 0.0}
    for X, lam, tau in _duality_instances(args):
        cert = esg_avar_dual(X, lam, tau)
        gaps["esg_avar"] = max(
            gaps["esg_avar"], abs(esg_avar(X, lam, tau) - cert.value)
        )
        residuals["esg_avar"] = max(
            residuals["esg_avar"], *cert.feasibility_residuals.values()
        )
        cert = esg_avar_l_dual(X, lam, tau)
        gaps["esg_avar_l"] = max(
            gaps["esg_avar_l"], abs(esg_avar_l(X, lam, tau) - cert.value)
        )
        residuals["esg_avar_l"] = max(
            residuals["esg_avar_l"], *cert.feasibility_residuals.values()
        )
    ok = all(g <= DUALITY_GAP_TOL for g in gaps.values())
    if args.format == "json":
        payload = {
            "trials": args.trials,
            "seed": args.seed,
            "gap_tolerance": DUALITY_GAP_TOL,
            "measures": [
                {
                    "measure": k,
                    "max_gap": _json_number(gaps[k]),
                    "max_residual": _json_number(residuals[k]),
                }
                for k in gaps
            ],
            "ok": ok,
        }
        text = _json_dumps(payload)
    else:
        lines = ["measure,trials,max_gap,max_residual"]
        for k in gaps:
            lines.append(
                f"{k},{args.trials},{fmt(gaps[k])},{fmt(residuals[k])}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_CONTRADICTION


def cmd_axioms(args) -> int:
    if args.trials < 1:
        raise ParameterError("--trials must be positive")
    matrix = reproduce_property_matrix(args.scope, args.trials, args.seed)
    if args.format == "json":
        payload = {
            "scope": matrix.scope,
            "rows": list(matrix.rows),
            "columns": list(matrix.columns),
            "cells": [
                {
                    "subject": subject,
                    "axiom": axiom,
                    "status": matrix.cells[(subject, axiom)],
                    "expected": matrix.expected[(subject, axiom)],
                    "report": matrix.reports[(subject, axiom)].to_jsonable(),
                }
                for subject in matrix.rows
                for axiom in matrix.columns
            ],
        }
        text = _json_dumps(payload)
    else:
        lines = [
            f"# scope={matrix.scope}",
            "subject,axiom,status,expected,trials,violations,worst_violation",
        ]
        for subject in matrix.rows:
            for axiom in matrix.columns:
                rep = matrix.reports[(subject, axiom)]
                lines.append(
                    f"{subject},{axiom},{matrix.cells[(subject, axiom)]},"
                    f"{matrix.expected[(subject, axiom)]},{rep.trials},"
                    f"{rep.violations},{fmt(rep.worst_violation)}"
                )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    contradictions = matrix.contradictions()
    inconclusive = matrix.inconclusive()
    if any(key not in inconclusive for key in contradictions):
        print(
            "property contradiction: "
            + "; ".join(f"{s}/{a}" for s, a in contradictions),
            file=sys.stderr,
        )
        return EXIT_CONTRADICTION
    if inconclusive:
        print(
            "inconclusive (no counterexample found within budget): "
            + "; ".join(f"{s}/{a}" for s, a in inconclusive),
            file=sys.stderr,
        )
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "stats":
            return cmd_stats(args)
        if args.command == "rank":
            return cmd_rank(args)
        if args.command == "ratio":
            return cmd_rank(args, ratios_only=True)
        if args.command == "hedge":
            return cmd_hedge(args)
        if args.command == "duality":
            return cmd_duality(args)
        if args.command == "axioms":
            return cmd_axioms(args)
        raise ParameterError(f"unknown command {args.command!r}")
    except DataError as exc:
        print(f"esgrisk: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ParameterError, InfeasibleHedgeError, NotFoundError) as exc:
        print(f"esgrisk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EsgRiskError as exc:  # pragma: no cover - safety net
        print(f"esgrisk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
