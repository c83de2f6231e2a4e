"""Univariate distribution building blocks."""

import numpy as np
import pytest

from esgrisk import DiscreteDistribution, ParameterError, avar, mean, partial_norm, std, variance
from esgrisk.risk_core import tail_weights

from conftest import avar_oracle, rand_probs


def dist(values, probs=None):
    values = np.asarray(values, float)
    if probs is None:
        probs = np.full(values.size, 1.0 / values.size)
    return DiscreteDistribution(values=values, probs=probs)


class TestDiscreteDistribution:
    def test_valid(self):
        d = dist([1.0, 2.0], [0.25, 0.75])
        assert len(d) == 2
        assert not d.values.flags.writeable

    def test_empty_rejected(self):
        with pytest.raises(ParameterError):
            DiscreteDistribution(values=np.array([]), probs=np.array([]))

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            dist([1.0, 2.0], [1.0])

    def test_negative_prob(self):
        with pytest.raises(ParameterError):
            dist([1.0, 2.0], [1.5, -0.5])

    def test_probs_must_sum_to_one(self):
        with pytest.raises(ParameterError):
            dist([1.0, 2.0], [0.5, 0.4])

    def test_nonfinite_value(self):
        with pytest.raises(ParameterError):
            dist([np.inf, 0.0])


class TestMoments:
    def test_degenerate(self):
        d = dist([0.07])
        assert mean(d) == 0.07
        assert variance(d) == 0.0
        assert std(d) == 0.0

    def test_symmetric_two_point(self):
        d = dist([-1.0, 1.0])
        assert mean(d) == 0.0
        assert variance(d) == pytest.approx(1.0, abs=1e-15)
        assert std(d) == pytest.approx(1.0, abs=1e-15)

    def test_hand_computed(self):
        d = dist([0.0, 1.0, 2.0], [0.5, 0.25, 0.25])
        assert mean(d) == pytest.approx(0.75, abs=1e-15)
        assert variance(d) == pytest.approx(0.6875, abs=1e-15)


class TestAvar:
    def test_tail_is_exactly_one_atom(self):
        # tail mass 0.25 covers exactly the worst atom
        d = dist([-0.10, 0.00, 0.05, 0.10])
        assert avar(d, 0.75) == pytest.approx(0.10, abs=1e-15)

    def test_tail_spans_two_atoms(self):
        d = dist([-0.10, 0.00, 0.05, 0.10])
        assert avar(d, 0.5) == pytest.approx(0.05, abs=1e-15)

    def test_degenerate_any_tau(self):
        d = dist([0.03])
        for tau in (0.0, 0.3, 0.75, 0.99):
            assert avar(d, tau) == pytest.approx(-0.03, abs=1e-15)

    def test_tau_zero_is_negated_mean(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 40))
            d = dist(rng.normal(size=n), rand_probs(rng, n))
            assert abs(avar(d, 0.0) + mean(d)) <= 1e-12

    def test_tau_out_of_range(self):
        d = dist([0.0, 1.0])
        for tau in (-0.1, 1.0, 1.5):
            with pytest.raises(ParameterError):
                avar(d, tau)

    def test_against_variational_oracle(self, rng):
        for _ in range(500):
            n = int(rng.integers(1, 50))
            values = rng.standard_t(3, n)
            probs = rand_probs(rng, n)
            tau = float(rng.uniform(0.0, 0.999))
            got = avar(dist(values, probs), tau)
            want = avar_oracle(values, probs, tau)
            assert abs(got - want) <= 1e-10 * (1.0 + abs(want))

    def test_boundary_atom_split(self):
        # tau=0.9 on two equal atoms: the 0.1 tail sits inside the worst
        d = dist([-0.2, 0.4])
        assert avar(d, 0.9) == pytest.approx(0.2, abs=1e-15)

    def test_coherence_properties(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 40))
            probs = rand_probs(rng, n)
            y1 = rng.normal(size=n)
            y2 = rng.normal(size=n)
            tau = float(rng.uniform(0.0, 0.99))
            a = float(rng.normal())
            alpha = float(rng.uniform(0.01, 5.0))
            v1, v2 = avar(dist(y1, probs), tau), avar(dist(y2, probs), tau)
            # translation
            assert abs(avar(dist(y1 + a, probs), tau) - (v1 - a)) <= 1e-10
            # positive homogeneity
            assert abs(avar(dist(alpha * y1, probs), tau) - alpha * v1) <= 1e-10 * (1 + abs(v1))
            # subadditivity on a common scenario space
            assert avar(dist(y1 + y2, probs), tau) <= v1 + v2 + 1e-10
            # monotonicity
            bump = rng.uniform(0.0, 1.0, n)
            assert avar(dist(y1 + bump, probs), tau) <= v1 + 1e-10

    def test_comonotone_additivity(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 40))
            probs = rand_probs(rng, n)
            y = rng.normal(size=n)
            g = np.tanh(y) + 2.0 * y  # strictly increasing transform
            tau = float(rng.uniform(0.0, 0.99))
            lhs = avar(dist(y + g, probs), tau)
            rhs = avar(dist(y, probs), tau) + avar(dist(g, probs), tau)
            assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(rhs))


class TestTailWeights:
    def test_mass_and_bounds(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 30))
            probs = rand_probs(rng, n)
            values = rng.normal(size=n)
            mass = float(rng.uniform(1e-6, 1.0))
            order = np.argsort(values, kind="stable")
            w = tail_weights(probs, order, mass)
            assert np.all(w >= 0)
            assert np.all(w <= probs + 1e-15)
            assert abs(w.sum() - mass) <= 1e-12


class TestPartialNorm:
    def test_no_downside(self):
        assert partial_norm(dist([0.1]), 0.0, "below", 2.0) == 0.0

    def test_below_hand(self):
        d = dist([-0.1, 0.3])
        want = np.sqrt(0.5 * 0.01)
        assert partial_norm(d, 0.0, "below", 2.0) == pytest.approx(want, abs=1e-12)

    def test_above_hand(self):
        d = dist([-0.1, 0.3])
        assert partial_norm(d, 0.0, "above", 1.0) == pytest.approx(0.15, abs=1e-15)

    def test_bad_order(self):
        with pytest.raises(ParameterError):
            partial_norm(dist([0.0, 1.0]), 0.0, "below", 0.0)

    def test_bad_side(self):
        with pytest.raises(ParameterError):
            partial_norm(dist([0.0, 1.0]), 0.0, "sideways", 2.0)

    def test_against_direct_recompute(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 30))
            values = rng.normal(size=n)
            probs = rand_probs(rng, n)
            thr = float(rng.normal())
            p = float(rng.uniform(0.2, 4.0))
            dev = np.maximum(thr - values, 0.0)
            want = float((probs @ dev**p) ** (1.0 / p))
            got = partial_norm(dist(values, probs), thr, "below", p)
            assert abs(got - want) <= 1e-12 * (1.0 + want)
