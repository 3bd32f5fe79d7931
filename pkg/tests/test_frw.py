import math
from collections import Counter
from fractions import Fraction

import pytest

from xorland.frw import (
    drift_probability,
    frw_experiment,
    frw_run,
    frw_step,
    focused_drift_lower_bound,
)
from xorland.gf2 import BitVector, mul_vec
from xorland.landscape import Instance, energy, ground_states
from xorland.rng import RngSpec


class TestFrwStep:
    def test_single_flip_within_violated_equation(self, eq1_instance):
        gen = RngSpec(1).generator()
        s = BitVector.from01("1110")
        for _ in range(50):
            t = frw_step(eq1_instance, s, gen)
            flipped = (s ^ t).support()
            assert len(flipped) == 1
            # the flipped variable occurs in some violated equation of s
            violated = mul_vec(eq1_instance.matrix, s)
            ok = any(
                eq1_instance.matrix.entry(i, flipped[0])
                for i in violated.support()
            )
            assert ok

    def test_uniform_over_single_violated_equation(self, eq1_instance):
        # From 1110 only the last equation (over x1, x2, x3) is violated:
        # each of its variables flips with probability 1/3.
        gen = RngSpec(3).generator()
        s = BitVector.from01("1110")
        freqs = Counter()
        trials = 30000
        for _ in range(trials):
            freqs[frw_step(eq1_instance, s, gen).to01()] += 1
        assert set(freqs) == {"0110", "1010", "1100"}
        se = math.sqrt((1 / 3) * (2 / 3) / trials)
        for count in freqs.values():
            assert abs(count / trials - 1 / 3) <= 3 * se

    def test_zero_energy_rejected(self, eq1_instance):
        with pytest.raises(ValueError):
            frw_step(eq1_instance, BitVector.from01("0000"), RngSpec(1))


class TestFrwRun:
    def test_ground_start(self, eq1_instance):
        trace = frw_run(eq1_instance, BitVector.from01("0000"), RngSpec(1), 100)
        assert trace.steps == 0 and trace.hit_ground

    def test_small_instance_recurrent(self, eq1_instance):
        trace = frw_run(eq1_instance, BitVector.from01("1110"), RngSpec(5), 10**6)
        assert trace.hit_ground
        assert trace.terminal.to01() == "0000"

    def test_deterministic(self, eq1_instance):
        a = frw_run(eq1_instance, BitVector.from01("1110"), RngSpec(7), 5000)
        b = frw_run(eq1_instance, BitVector.from01("1110"), RngSpec(7), 5000)
        assert a == b

    def test_cap_is_outcome_not_error(self, eq1_instance):
        trace = frw_run(eq1_instance, BitVector.from01("1110"), RngSpec(7), 1)
        assert trace.steps == 1 and not trace.hit_ground

    def test_recording(self, eq1_instance):
        grounds = ground_states(eq1_instance)
        trace = frw_run(
            eq1_instance, BitVector.from01("1110"), RngSpec(9), 500,
            record_every=1, grounds=grounds,
        )
        assert trace.energies is not None and trace.distances is not None
        assert trace.energies[0] == 1
        assert trace.distances[0] == 3
        if trace.hit_ground:
            assert trace.energies[-1] == 0

    def test_each_step_flips_one_bit(self, eq1_instance):
        # reconstruct flips from a recorded energy walk on a small instance
        inst = Instance.random(3, 10, RngSpec(11))
        s0 = BitVector(10, 0b1111100000)
        trace = frw_run(inst, s0, RngSpec(13), 200)
        # terminal differs from start by steps flips at most (parity match)
        assert (s0 ^ trace.terminal).weight % 2 == trace.steps % 2


class TestDriftProbability:
    def test_worked_example_toward_ground(self, eq1_instance):
        # from 1110 every focused flip moves toward 0000, so drift away = 0
        s = BitVector.from01("1110")
        g = BitVector.from01("0000")
        assert drift_probability(eq1_instance, g, s) == 0

    def test_single_disagreement(self):
        # s differs from g in one variable: every violated equation
        # contains it, and k-1 of k flips move away.
        inst = Instance.random(3, 14, RngSpec(17))
        g = ground_states(inst)[0]
        s = g ^ BitVector.from_indices(14, [5])
        assert drift_probability(inst, g, s) == Fraction(2, 3)

    def test_away_plus_toward_is_one(self):
        inst = Instance.random(3, 12, RngSpec(19))
        g = ground_states(inst)[0]
        gen = RngSpec(23).generator()
        for _ in range(20):
            s = BitVector(12, int(gen.integers(1, 1 << 12)))
            if energy(inst, s) == 0:
                continue
            away = drift_probability(inst, g, s)
            assert 0 <= away <= 1
            # complementary (toward) probability computed independently
            v = mul_vec(inst.matrix, s)
            agree_tot = 0
            diff = s.bits ^ g.bits
            e = 0
            for i in v.support():
                row = inst.matrix.rows[i]
                agree_tot += (row & diff).bit_count()
                e += 1
            assert away + Fraction(agree_tot, 3 * e) == 1

    def test_zero_energy_rejected(self, eq1_instance):
        with pytest.raises(ValueError):
            drift_probability(eq1_instance, BitVector.from01("0000"), BitVector.from01("0000"))

    def test_drift_bound_value(self):
        assert focused_drift_lower_bound(6, Fraction(1, 3)) == Fraction(55, 108)

    def test_expected_change_matches_drift(self):
        # E[W(s' xor g) - W(s xor g)] = 2p - 1 for one step
        inst = Instance.random(3, 12, RngSpec(29))
        g = ground_states(inst)[0]
        s = g ^ BitVector.from_indices(12, [0, 3, 7])
        if energy(inst, s) == 0:
            pytest.skip("degenerate draw")
        p = drift_probability(inst, g, s)
        gen = RngSpec(31).generator()
        trials = 40000
        total = 0
        d0 = (s ^ g).weight
        for _ in range(trials):
            t = frw_step(inst, s, gen)
            total += (t ^ g).weight - d0
        mean = total / trials
        se = 1.0 / math.sqrt(trials)  # steps are +-1
        assert abs(mean - float(2 * p - 1)) <= 4 * se


class TestStepDistribution:
    def test_flip_probability_formula(self):
        # P(flip q) = (1/|V|) * sum over violated equations containing q of 1/k
        inst = Instance.random(3, 10, RngSpec(47))
        gen = RngSpec(53).generator()
        s = None
        for _ in range(100):
            cand = BitVector(10, int(gen.integers(1, 1 << 10)))
            if energy(inst, cand) >= 2:
                s = cand
                break
        assert s is not None
        violated = mul_vec(inst.matrix, s).support()
        e = len(violated)
        expected = {}
        for q in range(10):
            mass = sum(1 for i in violated if inst.matrix.entry(i, q)) / (3 * e)
            if mass:
                expected[q] = mass
        trials = 60000
        freqs = Counter()
        for _ in range(trials):
            t = frw_step(inst, s, gen)
            freqs[(s ^ t).support()[0]] += 1
        assert set(freqs) <= set(expected)
        for q, p in expected.items():
            se = math.sqrt(p * (1 - p) / trials)
            assert abs(freqs[q] / trials - p) <= 4 * se + 1e-9


class TestDefaultParams:
    def test_preset_chain(self):
        from xorland.minima import default_far_minima_params

        delta, beta, gamma = default_far_minima_params(3, corank=0)
        assert 0 < gamma < min(beta * (3 - 2 - delta) / 4, Fraction(1, 7))
        assert 0 < beta < Fraction(1, 2)


class TestExperiment:
    def test_report_shape_single_trial(self):
        summaries = frw_experiment(3, [8], trials=1, cap=10**5, rng=RngSpec(37))
        assert len(summaries) == 1
        s = summaries[0]
        assert s.trials == 1 and s.successes + s.censored == 1

    def test_k3_small_walks_succeed(self):
        summaries = frw_experiment(3, [10, 14], trials=4, cap=10**6, rng=RngSpec(41))
        for s in summaries:
            assert s.success_fraction == 1.0

    def test_deterministic_summaries(self):
        a = frw_experiment(3, [8], trials=3, cap=10**5, rng=RngSpec(43))
        b = frw_experiment(3, [8], trials=3, cap=10**5, rng=RngSpec(43))
        assert a == b

    def test_distinct_streams_differ(self):
        a = frw_experiment(3, [8], trials=3, cap=10**5, rng=RngSpec(43, stream=1))
        b = frw_experiment(3, [8], trials=3, cap=10**5, rng=RngSpec(43, stream=2))
        assert a != b

    def test_oversized_n_rejected(self):
        with pytest.raises(ValueError, match="64-bit"):
            frw_experiment(3, [70], trials=1, cap=10, rng=RngSpec(1))
