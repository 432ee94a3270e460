import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaising import (
    EnergyParams,
    ParameterError,
    all_minus,
    all_plus,
    flip_delta,
    generate_random_regular,
    gibbs_exact,
    hamiltonian,
    hamiltonian_via_boundary,
)
from metaising.model import config_to_hex, hex_to_config, scaled_energy_table


class TestEnergyParams:
    def test_rejects_nonpositive_field(self):
        with pytest.raises(ParameterError):
            EnergyParams(h=Fraction(0))
        with pytest.raises(ParameterError):
            EnergyParams(h=Fraction(-1, 2))

    def test_parse_rational(self):
        assert EnergyParams.parse("1/2").h == Fraction(1, 2)
        assert EnergyParams.parse("0.1").h == Fraction(1, 10)


class TestHamiltonian:
    def test_k4_all_minus(self, k4, params_half):
        assert hamiltonian(k4, all_minus(k4), params_half) == -4

    def test_k4_all_plus(self, k4, params_half):
        assert hamiltonian(k4, all_plus(k4), params_half) == -8

    def test_k33_three_plus(self, k33, params_half):
        # plus set {0, 1, 3}: boundary 5, so 2*5 - 2*(1/2)*3 - 9 + 3 = 1
        assert hamiltonian(k33, 0b001011, params_half) == 1

    def test_boundary_formula_edge_cases(self, k33, params_half):
        h, n, E = params_half.h, k33.n, k33.edge_count
        assert hamiltonian_via_boundary(k33, 0, params_half) == -E + h * n
        full = all_plus(k33)
        assert hamiltonian_via_boundary(k33, full, params_half) == -E - h * n

    def test_boundary_formula_exhaustive(self, params_half):
        for seed in range(3):
            G = generate_random_regular(10, 3, seed)
            for sigma in range(1 << G.n):
                assert hamiltonian(G, sigma, params_half) == hamiltonian_via_boundary(
                    G, sigma, params_half
                )

    def test_complement_interaction_symmetry(self, params_half):
        # H(A; h) + H(A^c; h) only sees the interaction term twice
        G = generate_random_regular(10, 3, 4)
        from metaising.graphs import edge_boundary

        full = all_plus(G)
        for sigma in random.Random(0).sample(range(1 << G.n), 100):
            lhs = hamiltonian(G, sigma, params_half) + hamiltonian(
                G, full ^ sigma, params_half
            )
            assert lhs == 2 * (2 * edge_boundary(G, sigma) - G.edge_count)


class TestFlipDelta:
    def test_spec_value_k4_from_minus(self, k4, params_half):
        # minus spin with no plus neighbors: delta = 2(r-h) = 5
        for i in range(4):
            assert flip_delta(k4, 0, i, params_half) == 5
        assert hamiltonian(k4, 1, params_half) - hamiltonian(k4, 0, params_half) == 5

    def test_downhill_criterion_plus_flip(self, params_half):
        # r=3, h=1/2, plus spin with 2 minus neighbors: -8 + 7 = -1 <= 0
        # and indeed 2 >= (r+h)/2 = 1.75
        G = generate_random_regular(8, 3, 2)
        for sigma in range(1 << G.n):
            for i in range(G.n):
                if not (sigma >> i) & 1:
                    continue
                k = sum(1 for v in G.adjacency[i] if not (sigma >> v) & 1)
                delta = flip_delta(G, sigma, i, params_half)
                assert delta == -4 * k + 2 * (G.r + params_half.h)
                assert (delta <= 0) == (2 * k >= G.r + params_half.h)

    def test_matches_hamiltonian_exhaustive(self, params_half):
        G = generate_random_regular(10, 3, 1)
        for sigma in range(1 << G.n):
            for i in range(G.n):
                flipped = sigma ^ (1 << i)
                assert flip_delta(G, sigma, i, params_half) == hamiltonian_via_boundary(
                    G, flipped, params_half
                ) - hamiltonian_via_boundary(G, sigma, params_half)

    @given(sigma=st.integers(0, 2**10 - 1), i=st.integers(0, 9))
    @settings(max_examples=100, deadline=None)
    def test_involution(self, sigma, i):
        G = generate_random_regular(10, 3, 3)
        p = EnergyParams(h=Fraction(1, 3))
        there = flip_delta(G, sigma, i, p)
        back = flip_delta(G, sigma ^ (1 << i), i, p)
        assert there + back == 0

    def test_vertex_out_of_range(self, k4, params_half):
        with pytest.raises(ParameterError):
            flip_delta(k4, 0, 4, params_half)


class TestScaledEnergies:
    def test_distinct_rationals_stay_distinct(self, params_half):
        G = generate_random_regular(8, 3, 0)
        scaled, q = scaled_energy_table(G, params_half)
        for sigma in range(1 << G.n):
            assert Fraction(int(scaled[sigma]), q) == hamiltonian(G, sigma, params_half)


class TestGibbs:
    def test_infinite_temperature_uniform(self, k4):
        z, probs = gibbs_exact(k4, EnergyParams(h=Fraction(1, 2), beta=0.0))
        assert z == pytest.approx(16.0)
        assert np.allclose(probs, 1 / 16)

    def test_probabilities_normalized(self, k33):
        _, probs = gibbs_exact(k33, EnergyParams(h=Fraction(1, 2), beta=1.0))
        assert abs(probs.sum() - 1.0) < 1e-12

    def test_all_plus_dominates(self, k4):
        _, probs = gibbs_exact(k4, EnergyParams(h=Fraction(1, 2), beta=1.0))
        assert probs.argmax() == all_plus(k4)

    def test_plus_mass_monotone_in_beta(self):
        G = generate_random_regular(10, 3, 6)
        plus = all_plus(G)
        masses = [
            gibbs_exact(G, EnergyParams(h=Fraction(1, 2), beta=b))[1][plus]
            for b in (1.0, 2.0, 4.0)
        ]
        assert masses[0] < masses[1] < masses[2]


class TestHexConfigs:
    def test_round_trip(self):
        assert hex_to_config(config_to_hex(0b1011, 6), 6) == 0b1011

    def test_too_wide_rejected(self):
        with pytest.raises(ParameterError):
            hex_to_config("ff", 6)
