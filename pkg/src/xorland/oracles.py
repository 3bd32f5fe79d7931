"""Independent brute-force oracles used to validate the fast paths.

Everything here recomputes from first principles (direct parity counting,
breadth-first threshold connectivity, literal-level clause evaluation)
and shares no code with the implementations it checks.
"""
from __future__ import annotations

from collections import deque
from pathlib import Path

from .gf2 import BitVector, State
from .landscape import Instance


def naive_energy(inst: Instance, state_bits: int) -> int:
    count = 0
    for i in range(inst.n):
        ones = 0
        row = inst.matrix.rows[i]
        for j in range(inst.n):
            if row >> j & 1 and state_bits >> j & 1:
                ones += 1
        if ones % 2:
            count += 1
    return count


def naive_local_minima(inst: Instance) -> list[State]:
    n = inst.n
    energies = [naive_energy(inst, s) for s in range(1 << n)]
    out = []
    for s in range(1 << n):
        if energies[s] == 0:
            continue
        if all(energies[s ^ (1 << q)] > energies[s] for q in range(n)):
            out.append(BitVector(n, s))
    return out


def naive_bottleneck_height(inst: Instance, s: State, t: State) -> int:
    """Smallest h such that s reaches t through states of energy <= h (BFS)."""
    n = inst.n
    energies = [naive_energy(inst, x) for x in range(1 << n)]
    for h in range(max(energies[s.bits], energies[t.bits]), n + 1):
        seen = bytearray(1 << n)
        seen[s.bits] = 1
        frontier = deque([s.bits])
        while frontier:
            cur = frontier.popleft()
            if cur == t.bits:
                return h
            for q in range(n):
                nxt = cur ^ (1 << q)
                if not seen[nxt] and energies[nxt] <= h:
                    seen[nxt] = 1
                    frontier.append(nxt)
    raise AssertionError("unreachable: hypercube connects at max energy")


def naive_barrier_to_ground(inst: Instance, s: State) -> int:
    """Barrier of s: min over ground states of the bottleneck height, minus E(s)."""
    n = inst.n
    grounds = [x for x in range(1 << n) if naive_energy(inst, x) == 0]
    best = min(naive_bottleneck_height(inst, s, BitVector(n, g)) for g in grounds)
    return best - naive_energy(inst, s.bits)


def parse_dimacs(path: str | Path) -> tuple[int, list[list[int]]]:
    n_vars = 0
    clauses: list[list[int]] = []
    for raw in Path(path).read_text().splitlines():
        text = raw.strip()
        if not text or text.startswith("c"):
            continue
        if text.startswith("p"):
            parts = text.split()
            n_vars = int(parts[2])
            continue
        lits = [int(tok) for tok in text.split()]
        if lits[-1] != 0:
            raise ValueError("clause line must end with 0")
        clauses.append(lits[:-1])
    return n_vars, clauses


def violated_clause_count(clauses: list[list[int]], state_bits: int) -> int:
    count = 0
    for clause in clauses:
        satisfied = False
        for lit in clause:
            var = abs(lit) - 1
            value = state_bits >> var & 1
            if (lit > 0 and value) or (lit < 0 and not value):
                satisfied = True
                break
        if not satisfied:
            count += 1
    return count
