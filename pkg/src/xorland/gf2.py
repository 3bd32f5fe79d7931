"""Exact GF(2) linear algebra on bit-packed vectors and matrices.

Vectors and matrix rows are stored as Python integers, one bit per
coordinate (bit ``j`` is coordinate ``j``), so XOR, AND and popcount run
word-parallel on arbitrary sizes.  All types are immutable and hashable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class KernelTooLargeError(ValueError):
    """Raised when kernel enumeration would exceed the caller's cap."""

    def __init__(self, dimension: int, cap: int):
        super().__init__(
            f"kernel has dimension {dimension} (2**{dimension} vectors), "
            f"which exceeds the cap {cap}"
        )
        self.dimension = dimension
        self.cap = cap


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) column vector of fixed length."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits must lie in [0, 2**length)")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for j in indices:
            if not 0 <= j < length:
                raise ValueError(f"index {j} out of range for length {length}")
            bits |= 1 << j
        return cls(length, bits)

    @classmethod
    def from01(cls, text: str) -> "BitVector":
        """Parse a string like ``"1110"``; character ``i`` is coordinate ``i``."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def to01(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def bit(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise ValueError(f"index {j} out of range")
        return self.bits >> j & 1

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.length) if self.bits >> j & 1)

    def flip(self, j: int) -> "BitVector":
        if not 0 <= j < self.length:
            raise ValueError(f"index {j} out of range")
        return BitVector(self.length, self.bits ^ (1 << j))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return self.to01()


# A "state" of the energy landscape is just a vector; keep the alias public.
State = BitVector


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; each row is a bit mask over column indices.

    ``k_regular``, when set, asserts that every row and every column has
    exactly that many ones (verified at construction).
    """

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]
    k_regular: int | None = None

    def __post_init__(self):
        if self.n_rows <= 0 or self.n_cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) != self.n_rows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise ValueError("row mask outside column range")
        if self.k_regular is not None:
            k = self.k_regular
            if any(r.bit_count() != k for r in self.rows):
                raise ValueError(f"matrix is not {k}-regular: bad row weight")
            if any(c.bit_count() != k for c in self.column_masks):
                raise ValueError(f"matrix is not {k}-regular: bad column weight")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], k_regular: int | None = None) -> "BitMatrix":
        n_cols = len(rows[0])
        masks = []
        for row in rows:
            if len(row) != n_cols:
                raise ValueError("ragged rows")
            masks.append(sum((1 << j) for j, v in enumerate(row) if v % 2))
        return cls(len(rows), n_cols, tuple(masks), k_regular)

    @classmethod
    def from_row_supports(
        cls, n_cols: int, supports: Sequence[Iterable[int]], k_regular: int | None = None
    ) -> "BitMatrix":
        masks = tuple(BitVector.from_indices(n_cols, s).bits for s in supports)
        return cls(len(masks), n_cols, masks, k_regular)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Column j as a bit mask over row indices."""
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(cols)

    def row_vector(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.rows[i])

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.n_cols, self.n_rows, self.column_masks, self.k_regular)

    def to_dense(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.n_cols)] for i in range(self.n_rows)]

    @classmethod
    def from_dense(cls, array, k_regular: int | None = None) -> "BitMatrix":
        return cls.from_rows([list(row) for row in array], k_regular)


def weight(v: BitVector) -> int:
    """Number of nonzero coordinates."""
    return v.weight


def distance(s: BitVector, t: BitVector) -> int:
    """Hamming distance, the weight of the XOR."""
    return (s ^ t).weight


def mul_vec(a: BitMatrix, x: BitVector) -> BitVector:
    """Matrix-vector product over GF(2)."""
    if x.length != a.n_cols:
        raise ValueError(f"dimension mismatch: {a.n_rows}x{a.n_cols} matrix, length-{x.length} vector")
    bits = 0
    xb = x.bits
    for i, row in enumerate(a.rows):
        bits |= ((row & xb).bit_count() & 1) << i
    return BitVector(a.n_rows, bits)


def _reduced_echelon(masks: Sequence[int], n_cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with leftmost-lowest-index pivoting.

    Returns (reduced nonzero rows, pivot column per row), both in pivot order.
    """
    work = [m for m in masks if m]
    reduced: list[int] = []
    pivots: list[int] = []
    for col in range(n_cols):
        bit = 1 << col
        pivot_row = None
        for idx, m in enumerate(work):
            if m & bit:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        piv = work.pop(pivot_row)
        work = [m ^ piv if m & bit else m for m in work]
        reduced = [m ^ piv if m & bit else m for m in reduced]
        reduced.append(piv)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots


def rank(a: BitMatrix) -> int:
    """Row rank over GF(2)."""
    _, pivots = _reduced_echelon(a.rows, a.n_cols)
    return len(pivots)


def kernel_basis(a: BitMatrix) -> list[BitVector]:
    """A linearly independent set spanning {x : Ax = 0}."""
    reduced, pivots = _reduced_echelon(a.rows, a.n_cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(a.n_cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for row, col in zip(reduced, pivots):
            if row >> free & 1:
                bits |= 1 << col
        basis.append(BitVector(a.n_cols, bits))
    return basis


def enumerate_kernel(a: BitMatrix, cap: int) -> list[BitVector]:
    """All kernel vectors (including 0), provided 2**dim does not exceed cap."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    basis = kernel_basis(a)
    dim = len(basis)
    if (1 << dim) > cap:
        raise KernelTooLargeError(dim, cap)
    vectors = []
    for idx in range(1 << dim):
        bits = 0
        rem = idx
        pos = 0
        while rem:
            if rem & 1:
                bits ^= basis[pos].bits
            rem >>= 1
            pos += 1
        vectors.append(BitVector(a.n_cols, bits))
    return vectors


def _independent_row_indices(masks: Sequence[int]) -> list[int]:
    """Lexicographically first maximal set of linearly independent rows."""
    table: dict[int, int] = {}
    chosen = []
    for i, m in enumerate(masks):
        cur = m
        while cur:
            lead = (cur & -cur).bit_length() - 1
            if lead in table:
                cur ^= table[lead]
            else:
                table[lead] = cur
                chosen.append(i)
                break
    return chosen


@dataclass(frozen=True)
class StandardBasisSolution:
    """Vectors y with A y = e_j + r, with r supported on the dependent rows.

    ``triples`` holds (y, r, j) in original indexing, one per independent
    row j, ordered by j.  ``row_order`` / ``col_order`` record the implied
    permutations (independent indices first, ascending, then dependent).
    """

    triples: tuple[tuple[BitVector, BitVector, int], ...]
    independent_rows: tuple[int, ...]
    dependent_rows: tuple[int, ...]
    independent_cols: tuple[int, ...]
    dependent_cols: tuple[int, ...]

    @property
    def corank(self) -> int:
        return len(self.dependent_rows)

    @property
    def row_order(self) -> tuple[int, ...]:
        return self.independent_rows + self.dependent_rows

    @property
    def col_order(self) -> tuple[int, ...]:
        return self.independent_cols + self.dependent_cols


def solve_standard_basis(a: BitMatrix) -> StandardBasisSolution:
    """For each independent row j find y with A y = e_j + r.

    The r vectors vanish on all independent rows, so after moving the
    independent rows first they are supported on the trailing corank
    positions only.  Works for any matrix; the corank is reported through
    the returned index sets.
    """
    n_rows, n_cols = a.n_rows, a.n_cols
    # Independent columns: pivot columns of row elimination.
    _, pivot_cols = _reduced_echelon(a.rows, n_cols)
    r = len(pivot_cols)
    col_pos = {c: t for t, c in enumerate(pivot_cols)}
    # Restrict rows to the pivot columns (compressed coordinates).
    compressed = []
    for row in a.rows:
        bits = 0
        rem = row
        while rem:
            low = rem & -rem
            j = low.bit_length() - 1
            if j in col_pos:
                bits |= 1 << col_pos[j]
            rem ^= low
        compressed.append(bits)
    ind_rows = _independent_row_indices(compressed)
    if len(ind_rows) != r:
        raise AssertionError("row rank of column-restricted matrix must equal rank")
    # Invert the r x r block via Gauss-Jordan on [B | I].
    aug = [compressed[i] | (1 << (r + t)) for t, i in enumerate(ind_rows)]
    reduced, pivots = _reduced_echelon(aug, 2 * r)
    if pivots != list(range(r)):
        raise AssertionError("independent block must be invertible")
    inv_rows = [row >> r for row in reduced]  # row c holds row c of B^{-1}
    mask_r = (1 << r) - 1
    triples = []
    dep_rows = tuple(i for i in range(n_rows) if i not in set(ind_rows))
    dep_row_mask = sum(1 << i for i in dep_rows)
    for t, j in enumerate(ind_rows):
        u = 0  # column t of B^{-1}, over compressed coordinates
        for c in range(r):
            if inv_rows[c] >> t & 1:
                u |= 1 << c
        y_bits = 0
        for c in range(r):
            if u >> c & 1:
                y_bits |= 1 << pivot_cols[c]
        y = BitVector(n_cols, y_bits)
        ay = mul_vec(a, y)
        r_vec = BitVector(n_rows, ay.bits ^ (1 << j))
        if r_vec.bits & ~dep_row_mask:
            raise AssertionError("residual vector leaks onto independent rows")
        triples.append((y, r_vec, j))
    dep_cols = tuple(j for j in range(n_cols) if j not in set(pivot_cols))
    return StandardBasisSolution(
        triples=tuple(triples),
        independent_rows=tuple(ind_rows),
        dependent_rows=dep_rows,
        independent_cols=tuple(pivot_cols),
        dependent_cols=dep_cols,
    )
