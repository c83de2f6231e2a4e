"""Safe-asset calculus: hedge weights, charity threshold, selection."""

import numpy as np
import pytest

from esgrisk import (
    InfeasibleHedgeError,
    ParameterError,
    SafeAsset,
    charity_threshold,
    esg_hedge_weight,
    safe_asset_risk,
    select_safe_asset,
    univariate_hedge_weight,
)


class TestSafeAssetRisk:
    def test_unit_vector(self):
        for lam in (0.0, 0.3, 1.0):
            assert safe_asset_risk(SafeAsset(1.0, 1.0), lam) == -1.0

    def test_pure_cash_at_full_esg_preference(self):
        assert safe_asset_risk(SafeAsset(0.01, 0.0), 1.0) == 0.0

    def test_charity_hand_value(self):
        assert safe_asset_risk(SafeAsset(-1.0, 0.25), 0.9) == pytest.approx(-0.125, abs=1e-15)

    def test_linearity_across_assets(self, rng):
        # no diversification among safe assets: risk is exactly linear
        for _ in range(100):
            a = SafeAsset(float(rng.normal()), float(rng.normal()))
            b = SafeAsset(float(rng.normal()), float(rng.normal()))
            lam = float(rng.uniform(0, 1))
            d = float(rng.uniform(0, 1))
            mix = SafeAsset(d * a.rf_r + (1 - d) * b.rf_r,
                            d * a.rf_esg + (1 - d) * b.rf_esg)
            want = d * safe_asset_risk(a, lam) + (1 - d) * safe_asset_risk(b, lam)
            assert safe_asset_risk(mix, lam) == pytest.approx(want, abs=1e-12)

    def test_nonfinite_rejected(self):
        with pytest.raises(ParameterError):
            SafeAsset(float("nan"), 0.0)


class TestUnivariateHedge:
    def test_hand_value(self):
        assert univariate_hedge_weight(0.10, 0.02, 0.01) == pytest.approx(8 / 11, abs=1e-12)

    def test_no_hedge_needed(self):
        assert univariate_hedge_weight(0.10, 0.10, 0.01) == 0.0

    def test_full_substitution_limit(self):
        w = univariate_hedge_weight(0.10, -0.01 + 1e-12, 0.01)
        assert w == pytest.approx(1.0, abs=1e-9)

    def test_affine_verification(self, rng):
        for _ in range(300):
            rho = float(rng.uniform(0.001, 0.5))
            rf = float(rng.uniform(-0.02, 0.05))
            if rho + rf <= 0:
                continue
            kappa = float(rng.uniform(-rf + 1e-9, rho))
            w = univariate_hedge_weight(rho, kappa, rf)
            assert 0.0 <= w <= 1.0
            assert (1 - w) * rho - w * rf == pytest.approx(kappa, abs=1e-12)

    def test_infeasible_bounds(self):
        with pytest.raises(InfeasibleHedgeError, match="lower bound"):
            univariate_hedge_weight(0.10, -0.02, 0.01)
        with pytest.raises(InfeasibleHedgeError, match="position risk"):
            univariate_hedge_weight(0.10, 0.20, 0.01)


class TestEsgHedge:
    def test_hand_value(self):
        result = esg_hedge_weight(0.10, 0.02, 0.5, SafeAsset(0.01, 0.03))
        assert result.weight == pytest.approx(2 / 3, abs=1e-12)
        assert result.achieved_risk == pytest.approx(0.02, abs=1e-12)

    def test_lambda_zero_reduces_to_univariate(self, rng):
        for _ in range(50):
            rho = float(rng.uniform(0.01, 0.3))
            rf = float(rng.uniform(0.0, 0.05))
            kappa = float(rng.uniform(1e-6, rho))
            sa = SafeAsset(rf, float(rng.normal()))
            got = esg_hedge_weight(rho, kappa, 0.0, sa).weight
            want = univariate_hedge_weight(rho, kappa, rf)
            assert got == pytest.approx(want, abs=1e-15)

    def test_boundary_kappa(self):
        result = esg_hedge_weight(0.10, 0.10, 0.5, SafeAsset(0.01, 0.03))
        assert result.weight == 0.0
        assert result.achieved_risk == pytest.approx(0.10, abs=1e-15)

    def test_infeasible_names_bound(self):
        sa = SafeAsset(0.01, 0.03)
        with pytest.raises(InfeasibleHedgeError, match="lower bound"):
            esg_hedge_weight(0.10, -0.03, 0.5, sa)
        with pytest.raises(InfeasibleHedgeError, match="position risk"):
            esg_hedge_weight(0.10, 0.11, 0.5, sa)

    def test_result_carries_label(self):
        result = esg_hedge_weight(0.10, 0.02, 0.5, SafeAsset(0.01, 0.03, "gb"))
        assert result.safe_asset == "gb"


class TestCharityThreshold:
    def test_hand_values(self):
        assert charity_threshold(0.25) == pytest.approx(0.8, abs=1e-15)
        assert charity_threshold(0.0) == 1.0
        assert charity_threshold(1.0) == 0.5

    def test_sign_scan_oracle(self, rng):
        # bisection on the risk of the charity asset for the sign change
        for _ in range(50):
            rf_esg = float(rng.uniform(0.01, 3.0))
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if safe_asset_risk(SafeAsset(-1.0, rf_esg), mid) > 0:
                    lo = mid
                else:
                    hi = mid
            assert charity_threshold(rf_esg) == pytest.approx(0.5 * (lo + hi), abs=1e-12)

    def test_nonpositive_flow_never_hedges(self, rng):
        for _ in range(50):
            rf_esg = float(rng.uniform(-0.99, 0.0))
            for lam in np.linspace(0, 1, 21):
                assert safe_asset_risk(SafeAsset(-1.0, rf_esg), float(lam)) >= 0

    def test_invalid_flow(self):
        with pytest.raises(ParameterError):
            charity_threshold(-1.0)


class TestSelectSafeAsset:
    A = SafeAsset(0.02, 0.0, "cash")
    B = SafeAsset(0.0, 0.03, "green")

    def test_esg_weighted_preference(self):
        choice = select_safe_asset([self.A, self.B], 0.5)
        assert choice.label == "green"
        assert choice.risk == pytest.approx(-0.015, abs=1e-15)

    def test_monetary_preference(self):
        assert select_safe_asset([self.A, self.B], 0.0).label == "cash"

    def test_singleton(self):
        assert select_safe_asset([self.A], 0.7).label == "cash"

    def test_permutation_invariance(self, rng):
        assets = [SafeAsset(float(rng.normal()), float(rng.normal()), f"a{i}")
                  for i in range(6)]
        lam = 0.4
        base = select_safe_asset(assets, lam)
        for _ in range(10):
            perm = [assets[i] for i in rng.permutation(6)]
            assert select_safe_asset(perm, lam).risk == base.risk

    def test_ties_reported_in_input_order(self):
        twin = SafeAsset(0.02, 0.0, "twin")
        choice = select_safe_asset([self.A, twin, self.B], 0.0)
        assert choice.label == "cash"
        assert choice.ties == ("cash", "twin")

    def test_empty_list(self):
        with pytest.raises(ParameterError):
            select_safe_asset([], 0.5)
