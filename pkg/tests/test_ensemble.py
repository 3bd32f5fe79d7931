import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chi2

from xorland.ensemble import (
    Configuration,
    MaxTriesExceededError,
    default_max_tries,
    estimate_simple_probability,
    induced_matrix,
    sample_configuration,
    sample_k_regular,
)
from xorland.gf2 import BitMatrix
from xorland.rng import RngSpec


class TestConfiguration:
    def test_sample_shape_and_sums(self):
        cfg = sample_configuration(3, 3, RngSpec(1))
        counts, _ = induced_matrix(cfg)
        assert counts.shape == (3, 3)
        assert (counts.sum(axis=0) == 3).all()
        assert (counts.sum(axis=1) == 3).all()

    def test_determinism(self):
        a = sample_configuration(3, 5, RngSpec(7, stream=2))
        b = sample_configuration(3, 5, RngSpec(7, stream=2))
        assert a == b

    def test_precondition(self):
        with pytest.raises(ValueError):
            sample_configuration(3, 2, RngSpec(0))
        with pytest.raises(ValueError):
            sample_configuration(2, 5, RngSpec(0))

    def test_identity_pairing_not_simple(self):
        cfg = Configuration(3, 4, tuple(range(12)))
        counts, simple = induced_matrix(cfg)
        assert not simple
        assert (counts == 3 * np.eye(4)).all()

    def test_bad_pairing_rejected(self):
        with pytest.raises(ValueError):
            Configuration(3, 3, (0,) * 9)


class TestSampleKRegular:
    def test_regularity_popcounts(self):
        res = sample_k_regular(3, 12, RngSpec(3))
        m = res.matrix
        assert all(r.bit_count() == 3 for r in m.rows)
        assert all(c.bit_count() == 3 for c in m.column_masks)
        assert m.k_regular == 3

    def test_determinism(self):
        a = sample_k_regular(3, 10, RngSpec(5))
        b = sample_k_regular(3, 10, RngSpec(5))
        assert a.matrix == b.matrix and a.rejections == b.rejections

    def test_simple_output_matches_induced_matrix_semantics(self):
        res = sample_k_regular(3, 8, RngSpec(11))
        dense = res.matrix.to_dense()
        assert max(max(row) for row in dense) <= 1
        assert BitMatrix.from_dense(dense, k_regular=3) == res.matrix

    def test_max_tries_error_carries_attempts(self):
        with pytest.raises(MaxTriesExceededError) as err:
            # k=6 simpleness is ~5e-7 at n=12; 3 tries cannot succeed.
            sample_k_regular(6, 12, RngSpec(1), max_tries=3)
        assert err.value.attempts == 3

    def test_default_max_tries_scale(self):
        assert default_max_tries(3) == 1000 * math.ceil(math.exp(2))

    def test_expected_tries_within_three_se(self):
        # Mean rejection count ~ exp((k-1)^2/2) - 1 at k=3 for large n.
        samples = 800
        rejections = [sample_k_regular(3, 100, RngSpec(17).with_stream(t)).rejections
                      for t in range(samples)]
        mean = sum(rejections) / samples
        sd = (sum((r - mean) ** 2 for r in rejections) / (samples - 1)) ** 0.5
        se = sd / samples**0.5
        assert abs(mean - (math.exp(2) - 1)) <= 3 * se

    def test_uniformity_chi_square_k3_n4(self, eq1_matrix):
        # Every 3-regular 4x4 matrix is the complement of a permutation
        # matrix, so the support has exactly 24 elements.
        samples = 4800
        freqs = Counter()
        for t in range(samples):
            m = sample_k_regular(3, 4, RngSpec(23).with_stream(t)).matrix
            freqs[m.rows] += 1
        assert len(freqs) == 24
        assert eq1_matrix.rows in freqs  # the worked example is a possible outcome
        expected = samples / 24
        stat = sum((c - expected) ** 2 / expected for c in freqs.values())
        assert stat < chi2.ppf(0.999, 23)

    def test_kernel_size_mean_below_expectation_bound(self):
        # Cross-module check: Monte Carlo kernel sizes stay below
        # rho^-1 * S_k(n) for admissible rho.
        from fractions import Fraction

        from xorland.enumerator import kernel_expectation_bound
        from xorland.gf2 import rank

        samples = 150
        n = 24
        sizes = [
            2 ** (n - rank(sample_k_regular(3, n, RngSpec(59).with_stream(t)).matrix))
            for t in range(samples)
        ]
        mean = sum(sizes) / samples
        bound = kernel_expectation_bound(3, n, Fraction(1, 10))
        assert mean <= float(bound)


class TestSimpleProbability:
    def test_single_trial_is_zero_or_one(self):
        est = estimate_simple_probability(3, 10, 1, RngSpec(2))
        assert est.fraction in (0.0, 1.0)
        assert est.trials == 1

    def test_monte_carlo_k3(self):
        est = estimate_simple_probability(3, 100, 4000, RngSpec(29))
        assert abs(est.fraction - math.exp(-2)) <= 4 * est.std_error + 0.01

    def test_simpleness_deviation_shrinks_with_n(self):
        # |empirical - exp(-2)| at n=30 (~0.009, finite-size bias) clearly
        # exceeds the n=400 deviation (inside Monte Carlo noise).
        target = math.exp(-2)
        devs = []
        for n in (30, 400):
            est = estimate_simple_probability(3, n, 150_000, RngSpec(317).with_stream(n))
            devs.append(abs(est.fraction - target))
        assert devs[1] < devs[0]

    def test_monte_carlo_matches_induced_matrix_flag(self):
        # The batched simpleness test must agree with induced_matrix.
        hits = 0
        trials = 200
        for t in range(trials):
            cfg = sample_configuration(3, 20, RngSpec(31).with_stream(t))
            _, simple = induced_matrix(cfg)
            hits += simple
        est = estimate_simple_probability(3, 20, trials, RngSpec(37))
        # Both are binomial draws from the same distribution; crude sanity band.
        assert abs(est.fraction - hits / trials) < 0.2
