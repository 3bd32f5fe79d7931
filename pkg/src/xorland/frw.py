"""Focused random walk: simulation, exact one-step drift, hitting-time runs.

Each step picks a violated equation uniformly at random and flips one of
its k variables uniformly at random.  The walk keeps the violated-row
vector incrementally (one column-mask XOR per flip).  Raw 64-bit draws
are consumed from pre-drawn blocks and reduced modulo the needed range;
the bias (at most n / 2**63) is negligible against every statistical
tolerance used anywhere in this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gf2 import BitVector, State, mul_vec
from .landscape import Instance
from .rng import RngSpec


@dataclass(frozen=True)
class WalkTrace:
    steps: int
    terminal: State
    hit_ground: bool
    rng: RngSpec
    energies: tuple[int, ...] | None = None
    distances: tuple[int, ...] | None = None
    record_every: int | None = None


class _RawDraws:
    """Deterministic stream of raw 64-bit integers, drawn in blocks."""

    __slots__ = ("gen", "block", "pos")

    def __init__(self, gen: np.random.Generator, block_size: int = 1 << 14):
        self.gen = gen
        self.block = gen.integers(0, 1 << 63, size=block_size, dtype=np.int64)
        self.pos = 0

    def next(self) -> int:
        if self.pos == len(self.block):
            self.block = self.gen.integers(0, 1 << 63, size=len(self.block), dtype=np.int64)
            self.pos = 0
        v = self.block[self.pos]
        self.pos += 1
        return int(v)


def _violated_indices(v_bits: int) -> list[int]:
    out = []
    while v_bits:
        low = v_bits & -v_bits
        out.append(low.bit_length() - 1)
        v_bits ^= low
    return out


def frw_step(inst: Instance, s: State, rng: RngSpec | np.random.Generator) -> State:
    """One focused step; requires at least one violated equation."""
    gen = rng.generator() if isinstance(rng, RngSpec) else rng
    v = mul_vec(inst.matrix, s).bits
    if v == 0:
        raise ValueError("state has energy 0: no violated equation to focus on")
    rows = _violated_indices(v)
    eq = rows[int(gen.integers(len(rows)))]
    support = inst.matrix.row_vector(eq).support()
    q = support[int(gen.integers(len(support)))]
    return s.flip(q)


def frw_run(
    inst: Instance,
    s0: State,
    rng: RngSpec,
    max_steps: int,
    record_every: int | None = None,
    grounds: Sequence[State] | None = None,
) -> WalkTrace:
    """Iterate focused steps until a ground state or the step cap.

    Cap exhaustion is a recorded outcome, not an error.  With
    ``record_every`` the energy (and, when ``grounds`` is supplied, the
    distance to the nearest ground state) is logged every that many steps.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if s0.length != inst.n:
        raise ValueError("state length mismatch")
    n = inst.n
    cols = inst.matrix.column_masks
    supports = [inst.matrix.row_vector(i).support() for i in range(n)]
    s = s0.bits
    v = mul_vec(inst.matrix, s0).bits
    draws = _RawDraws(rng.generator())
    energies: list[int] | None = [] if record_every else None
    dists: list[int] | None = [] if (record_every and grounds is not None) else None

    def record():
        if energies is not None:
            energies.append(v.bit_count())
            if dists is not None:
                dists.append(min((s ^ g.bits).bit_count() for g in grounds))

    record()
    steps = 0
    while v and steps < max_steps:
        rows = _violated_indices(v)
        eq = rows[draws.next() % len(rows)]
        support = supports[eq]
        q = support[draws.next() % len(support)]
        s ^= 1 << q
        v ^= cols[q]
        steps += 1
        if record_every and steps % record_every == 0:
            record()
    return WalkTrace(
        steps=steps,
        terminal=BitVector(n, s),
        hit_ground=(v == 0),
        rng=rng,
        energies=tuple(energies) if energies is not None else None,
        distances=tuple(dists) if dists is not None else None,
        record_every=record_every,
    )


def drift_probability(inst: Instance, g: State, s: State) -> Fraction:
    """Exact probability that one focused step increases the distance to g.

    Sums, over the violated equations, the fraction of their variables
    agreeing with g (flipping an agreeing variable moves away), weighted
    uniformly over violated equations.
    """
    if g.length != inst.n or s.length != inst.n:
        raise ValueError("state length mismatch")
    v = mul_vec(inst.matrix, s).bits
    if v == 0:
        raise ValueError("state has energy 0")
    diff = s.bits ^ g.bits
    k = inst.k
    num_away = 0
    e = 0
    for i in _violated_indices(v):
        row = inst.matrix.rows[i]
        num_away += k - (row & diff).bit_count()
        e += 1
    return Fraction(num_away, k * e)


def focused_drift_lower_bound(k: int, delta) -> Fraction:
    """(k-1)(k-2-delta)/k**2, the uniform drift bound under expansion."""
    from ._util import exact_fraction

    d = exact_fraction(delta)
    return Fraction(k - 1, 1) * (k - 2 - d) / (k * k)


@dataclass(frozen=True)
class HittingSummary:
    n: int
    trials: int
    cap: int
    successes: int
    censored: int
    success_fraction: float
    median_steps_effective: float  # censored runs count as the cap
    mean_steps_success: float | None


def frw_experiment(
    k: int,
    n_list: Sequence[int],
    trials: int,
    cap: int,
    rng: RngSpec,
    instances_per_n: int = 1,
    max_tries: int | None = None,
) -> list[HittingSummary]:
    """Hitting-time experiment: fresh uniform start per trial, shared instances.

    Per-(n, trial) RNG streams are jump-indexed off the master spec, so
    the summaries do not depend on execution order.  Censored runs (cap
    reached) are reported as counts and enter the median at the cap value.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if trials * len(n_list) >= 1_000_000:
        raise ValueError("too many trials for the stream layout")
    if any(n > 63 for n in n_list):
        raise ValueError("uniform initial states are drawn as 64-bit words; n must be <= 63")
    # Each master stream owns a disjoint window of derived streams, so two
    # experiments with different streams (same seed) never share draws.
    base = rng.stream * 2_000_003
    summaries = []
    for ni, n in enumerate(n_list):
        instances = [
            Instance.random(k, n, rng.with_stream(base + 1_000_000 + 1000 * ni + j), max_tries)
            for j in range(instances_per_n)
        ]
        steps_eff: list[int] = []
        successes = 0
        success_steps = []
        for t in range(trials):
            inst = instances[t % instances_per_n]
            trial_rng = rng.with_stream(base + 1 + ni * trials + t)
            s0 = BitVector(n, int(trial_rng.generator(jump=1).integers(0, 1 << n, dtype=np.uint64)))
            trace = frw_run(inst, s0, trial_rng, cap)
            if trace.hit_ground:
                successes += 1
                success_steps.append(trace.steps)
                steps_eff.append(trace.steps)
            else:
                steps_eff.append(cap)
        steps_eff.sort()
        mid = len(steps_eff) // 2
        median = (
            float(steps_eff[mid])
            if len(steps_eff) % 2
            else (steps_eff[mid - 1] + steps_eff[mid]) / 2.0
        )
        summaries.append(
            HittingSummary(
                n=n,
                trials=trials,
                cap=cap,
                successes=successes,
                censored=trials - successes,
                success_fraction=successes / trials,
                median_steps_effective=median,
                mean_steps_success=(sum(success_steps) / successes) if successes else None,
            )
        )
    return summaries
