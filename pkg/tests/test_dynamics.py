import math
import statistics
from fractions import Fraction

import numpy as np
import pytest

from metaising import (
    EnergyParams,
    ParameterError,
    all_minus,
    all_plus,
    estimate_exponent,
    exact_mean_hitting_time,
    generate_random_regular,
    gibbs_exact,
    run_until_hit,
    transition_probability,
)
from metaising.dynamics import ChainState, run_replicas, sample_occupancy
from metaising.errors import CapacityError, CensoredSampleError


class TestTransitionProbability:
    def test_single_flip_value(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        # all-minus -> one plus: delta = 5
        assert transition_probability(k4, 0, 1, p) == pytest.approx(math.exp(-5) / 4)

    def test_distant_pairs_zero(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        assert transition_probability(k4, 0, 0b11, p) == 0.0

    def test_rows_sum_to_one(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.3)
        for sigma in range(16):
            total = sum(transition_probability(k4, sigma, t, p) for t in range(16))
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_laziness_nonnegative(self):
        G = generate_random_regular(8, 3, 0)
        p = EnergyParams(h=Fraction(1, 2), beta=0.0)
        for sigma in range(1 << 8):
            assert transition_probability(G, sigma, sigma, p) >= 0

    def test_detailed_balance_exhaustive(self):
        G = generate_random_regular(8, 3, 1)
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        _, mu = gibbs_exact(G, p)
        for sigma in range(1 << 8):
            for j in range(8):
                tau = sigma ^ (1 << j)
                lhs = mu[sigma] * transition_probability(G, sigma, tau, p)
                rhs = mu[tau] * transition_probability(G, tau, sigma, p)
                assert lhs == pytest.approx(rhs, rel=1e-12)


class TestChainState:
    def test_step_matches_kernel_trajectory(self, k33):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        sample = run_until_hit(k33, p, 0, all_plus(k33), 10_000, seed=42)
        chain = ChainState(k33, p, 0, seed=42)
        for _ in range(sample.steps):
            chain.step()
        assert chain.current == all_plus(k33)
        assert chain.recount()

    def test_one_step_law_matches_formula(self, k4):
        # empirical one-step frequencies vs transition_probability, 3 sigma
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        start = 0b0001
        trials = 200_000
        counts: dict[int, int] = {}
        for seed in range(trials):
            chain = ChainState(k4, p, start, seed=seed)
            nxt = chain.step()
            counts[nxt] = counts.get(nxt, 0) + 1
        for target in range(16):
            expected = transition_probability(k4, start, target, p)
            observed = counts.get(target, 0) / trials
            sigma = math.sqrt(max(expected * (1 - expected), 1e-12) / trials)
            assert abs(observed - expected) <= 3.5 * sigma


class TestRunUntilHit:
    def test_immediate_hit(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        s = run_until_hit(k4, p, 7, 7, 100, seed=0)
        assert s.steps == 0 and s.hit

    def test_seed_determinism(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        a = run_until_hit(k4, p, 0, 15, 10**6, seed=9)
        b = run_until_hit(k4, p, 0, 15, 10**6, seed=9)
        assert a.hit and a.steps == b.steps

    def test_budget_exhaustion_censors(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=12.0)
        s = run_until_hit(k4, p, 0, 15, 50, seed=0)
        assert not s.hit and s.steps == 50

    def test_max_steps_validation(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        with pytest.raises(ParameterError):
            run_until_hit(k4, p, 0, 15, 0, seed=0)


class TestExactMeanHittingTime:
    def test_absorbing_state_zero(self, k4):
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        t = exact_mean_hitting_time(k4, p)
        assert t[all_plus(k4)] == 0.0
        assert np.all(t[: all_plus(k4)] > 0)

    def test_cap(self):
        G = generate_random_regular(16, 3, 0)
        with pytest.raises(CapacityError):
            exact_mean_hitting_time(G, EnergyParams(h=Fraction(1, 2), beta=1.0))

    @pytest.mark.parametrize("beta", [0.0, 1.0, 2.0])
    def test_monte_carlo_agrees(self, beta):
        G = generate_random_regular(10, 3, 3)
        p = EnergyParams(h=Fraction(1, 2), beta=beta)
        exact = exact_mean_hitting_time(G, p)[all_minus(G)]
        samples = run_replicas(G, p, 0, all_plus(G), 10**7, list(range(400)))
        assert all(s.hit for s in samples)
        steps = [s.steps for s in samples]
        mean = statistics.mean(steps)
        se = statistics.stdev(steps) / math.sqrt(len(steps))
        assert abs(mean - exact) <= 3 * se


class TestEstimateExponent:
    def test_k4_slope_near_gamma(self, k4):
        p = EnergyParams(h=Fraction(1, 2))
        est = estimate_exponent(k4, p, [8.0, 10.0])
        assert 5.7 <= est["slope"] <= 6.3

    def test_k33_slope_near_gamma(self, k33):
        p = EnergyParams(h=Fraction(1, 2))
        est = estimate_exponent(k33, p, [6.0, 8.0])
        assert abs(est["slope"] - 7) <= 0.7

    def test_single_beta_rejected(self, k4):
        with pytest.raises(ParameterError):
            estimate_exponent(k4, EnergyParams(h=Fraction(1, 2)), [8.0])

    def test_censored_samples_abort(self, k4):
        p = EnergyParams(h=Fraction(1, 2))
        with pytest.raises(CensoredSampleError):
            estimate_exponent(
                k4, p, [8.0, 10.0], method="monte-carlo", replicas=5, max_steps=10
            )


class TestStationarity:
    def test_empirical_tv_distance_small(self):
        G = generate_random_regular(8, 3, 5)
        p = EnergyParams(h=Fraction(1, 2), beta=1.0)
        _, mu = gibbs_exact(G, p)
        visits = sample_occupancy(G, p, 0, n_steps=10**7, burn_in=10**5, seed=2024)
        empirical = visits / visits.sum()
        tv = 0.5 * np.abs(empirical - mu).sum()
        assert tv < 0.02
