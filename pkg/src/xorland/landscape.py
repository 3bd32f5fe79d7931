"""Exhaustive energy-landscape analytics for small n.

States are the 2**n assignments; the energy of a state is the number of
violated parity equations.  This module enumerates ground states and
local minima exactly and computes bottleneck energy barriers by a
union-find sweep over increasing energy thresholds: two states are
separated by height h when h is the smallest threshold at which they
fall into one connected component of the energy-filtered hypercube.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections import deque

import numpy as np

from . import ensemble
from .gf2 import BitMatrix, BitVector, State, enumerate_kernel, mul_vec
from .rng import RngSpec

EXHAUSTIVE_CAP_DEFAULT = 26
KERNEL_CAP_DEFAULT = 1 << 16


@dataclass(frozen=True)
class Instance:
    """A k-regular system A x = 0 over GF(2) plus its provenance."""

    matrix: BitMatrix
    k: int
    provenance: object = None

    def __post_init__(self):
        a = self.matrix
        if a.n_rows != a.n_cols:
            raise ValueError("instance matrix must be square")
        if a.k_regular is None:
            if any(r.bit_count() != self.k for r in a.rows) or any(
                c.bit_count() != self.k for c in a.column_masks
            ):
                raise ValueError(f"matrix is not {self.k}-regular")
        elif a.k_regular != self.k:
            raise ValueError("k mismatch between instance and matrix flag")

    @property
    def n(self) -> int:
        return self.matrix.n_cols

    @classmethod
    def random(cls, k: int, n: int, rng: RngSpec, max_tries: int | None = None) -> "Instance":
        result = ensemble.sample_k_regular(k, n, rng, max_tries)
        return cls(matrix=result.matrix, k=k, provenance=rng)


@dataclass(frozen=True)
class BarrierResult:
    """Bottleneck height between s and t: min over s-t walks of the max energy."""

    s: State
    t: State
    height: int
    barrier: int  # height - E(s)
    witness_path: tuple[State, ...] | None = None


def energy(inst: Instance, s: State) -> int:
    """Number of violated equations, the weight of A s."""
    return mul_vec(inst.matrix, s).weight


def violated_rows(inst: Instance, s: State) -> BitVector:
    return mul_vec(inst.matrix, s)


def ground_states(inst: Instance, cap: int = KERNEL_CAP_DEFAULT) -> list[State]:
    """All zero-energy states: exactly the kernel of the matrix."""
    return enumerate_kernel(inst.matrix, cap)


def is_local_minimum(inst: Instance, s: State) -> bool:
    """E(s) > 0 and every single-flip neighbor has strictly larger energy.

    Uses column-local recomputation: flipping variable q changes the
    energy by weight(col_q) - 2 * |violated & col_q|.
    """
    v = mul_vec(inst.matrix, s).bits
    if v == 0:
        return False
    for col in inst.matrix.column_masks:
        if col.bit_count() - 2 * (v & col).bit_count() <= 0:
            return False
    return True


def _check_cap(n: int, cap_n: int):
    if n > cap_n:
        raise ValueError(
            f"n={n} exceeds the exhaustive cap {cap_n}; use the constructive "
            "local-minima pipeline (minima module) for large instances"
        )


def energy_table(inst: Instance, cap_n: int = EXHAUSTIVE_CAP_DEFAULT) -> np.ndarray:
    """Energies of all 2**n states as uint8, indexed by state bits."""
    n = inst.n
    _check_cap(n, cap_n)
    dtype = np.uint32 if n <= 32 else np.uint64
    v = np.zeros(1 << n, dtype=dtype)
    cols = inst.matrix.column_masks
    for q in range(n):
        half = 1 << q
        v[half : 2 * half] = v[:half] ^ dtype(cols[q])
    energies = np.bitwise_count(v).astype(np.uint8)
    return energies


def _neighbor_energies(energies: np.ndarray, q: int) -> np.ndarray:
    """energies[state ^ (1 << q)] for all states, as a strided block swap."""
    return energies.reshape(-1, 2, 1 << q)[:, ::-1, :].reshape(-1)


def enumerate_local_minima(inst: Instance, cap_n: int = EXHAUSTIVE_CAP_DEFAULT) -> list[State]:
    """All local minima, by a full sweep of the 2**n states."""
    n = inst.n
    _check_cap(n, cap_n)
    energies = energy_table(inst, cap_n)
    mask = energies > 0
    for q in range(n):
        np.logical_and(mask, _neighbor_energies(energies, q) > energies, out=mask)
    return [BitVector(n, int(s)) for s in np.flatnonzero(mask)]


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = np.arange(size, dtype=np.int32)

    def find(self, v: int) -> int:
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return int(v)

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _sweep_connections(
    energies: np.ndarray,
    n: int,
    queries: list[tuple[int, tuple[int, ...]]],
) -> list[tuple[int, int]]:
    """(height, achieving target) per query: the smallest threshold at which
    the query state joins any of its targets, by one union-find sweep over
    ascending energy levels.  Stops as soon as every query is resolved.
    """
    uf = _UnionFind(1 << n)
    answers: list[tuple[int, int] | None] = [None] * len(queries)
    pending = set(range(len(queries)))
    for h in range(int(energies.max()) + 1):
        level = np.flatnonzero(energies == h)
        if level.size:
            for q in range(n):
                nb = level ^ (1 << q)
                sel = energies[nb] <= h
                for a, b in zip(level[sel].tolist(), nb[sel].tolist()):
                    uf.union(a, b)
        for qi in list(pending):
            s, targets = queries[qi]
            if energies[s] > h:
                continue
            root = uf.find(s)
            for t in sorted(targets):
                if energies[t] <= h and uf.find(t) == root:
                    answers[qi] = (h, t)
                    pending.discard(qi)
                    break
        if not pending:
            break
    if pending:
        raise AssertionError("hypercube failed to connect below max energy")
    return answers  # type: ignore[return-value]


def _witness_path(energies: np.ndarray, n: int, s: int, t: int, height: int) -> tuple[State, ...]:
    """A concrete s-t walk whose maximum energy equals the bottleneck height."""
    prev = np.full(1 << n, -1, dtype=np.int64)
    prev[s] = s
    frontier = deque([s])
    while frontier:
        cur = frontier.popleft()
        if cur == t:
            break
        for q in range(n):
            nxt = cur ^ (1 << q)
            if prev[nxt] == -1 and energies[nxt] <= height:
                prev[nxt] = cur
                frontier.append(nxt)
    if prev[t] == -1:
        raise AssertionError("no path at the computed bottleneck height")
    path = [t]
    while path[-1] != s:
        path.append(int(prev[path[-1]]))
    path.reverse()
    return tuple(BitVector(n, p) for p in path)


def bottleneck_height(
    inst: Instance,
    s: State,
    t: State,
    cap_n: int = EXHAUSTIVE_CAP_DEFAULT,
    witness: bool = False,
) -> BarrierResult:
    """Exact bottleneck height and barrier between two states."""
    if s.length != inst.n or t.length != inst.n:
        raise ValueError("state length mismatch")
    _check_cap(inst.n, cap_n)
    energies = energy_table(inst, cap_n)
    (h, _), = _sweep_connections(energies, inst.n, [(s.bits, (t.bits,))])
    path = _witness_path(energies, inst.n, s.bits, t.bits, h) if witness else None
    return BarrierResult(s=s, t=t, height=h, barrier=h - energy(inst, s), witness_path=path)


def barrier_to_ground(
    inst: Instance,
    s: State,
    cap_n: int = EXHAUSTIVE_CAP_DEFAULT,
    kernel_cap: int = KERNEL_CAP_DEFAULT,
    witness: bool = False,
) -> BarrierResult:
    """Minimum bottleneck height from s to any ground state."""
    return barriers_to_ground(inst, [s], cap_n, kernel_cap, witness)[0]


def barriers_to_ground(
    inst: Instance,
    states: list[State],
    cap_n: int = EXHAUSTIVE_CAP_DEFAULT,
    kernel_cap: int = KERNEL_CAP_DEFAULT,
    witness: bool = False,
) -> list[BarrierResult]:
    """Barriers from each state to its nearest-in-height ground state.

    All states share one threshold sweep.  The reported t is the
    lowest-bits ground state in the first connecting component.
    """
    _check_cap(inst.n, cap_n)
    grounds = ground_states(inst, kernel_cap)
    ground_bits = tuple(g.bits for g in grounds)
    energies = energy_table(inst, cap_n)
    queries = [(s.bits, ground_bits) for s in states]
    answers = _sweep_connections(energies, inst.n, queries)
    results = []
    for s, (h, t_bits) in zip(states, answers):
        t = BitVector(inst.n, t_bits)
        path = _witness_path(energies, inst.n, s.bits, t_bits, h) if witness else None
        results.append(
            BarrierResult(s=s, t=t, height=h, barrier=h - energy(inst, s), witness_path=path)
        )
    return results
