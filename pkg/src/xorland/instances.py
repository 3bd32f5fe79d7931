"""Instance files, DIMACS CNF export, and machine-readable reports.

The ``.xnf`` format is line-oriented text: a header ``x k n``, optional
``c key value`` provenance comments, then exactly n equation lines, each
listing the k distinct 1-based column indices of one parity equation in
ascending order.  Parsing re-validates k-regularity, so the format
round-trips bit-exactly.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .gf2 import BitMatrix, BitVector
from .landscape import Instance
from .rng import RngSpec

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed instance file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def write_instance(inst: Instance, path: str | Path):
    path = Path(path)
    lines = [f"x {inst.k} {inst.n}"]
    if isinstance(inst.provenance, RngSpec):
        p = inst.provenance
        lines.append(f"c rng {p.algorithm} {p.seed} {p.stream}")
    elif isinstance(inst.provenance, str) and inst.provenance:
        lines.append(f"c src {inst.provenance}")
    for i in range(inst.n):
        support = inst.matrix.row_vector(i).support()
        lines.append(" ".join(str(j + 1) for j in support))
    path.write_text("\n".join(lines) + "\n")


def read_instance(path: str | Path) -> Instance:
    path = Path(path)
    header = None
    provenance = None
    supports: list[tuple[int, ...]] = []
    k = n = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        text = raw.strip()
        if not text:
            continue
        if header is None:
            parts = text.split()
            if len(parts) != 3 or parts[0] != "x":
                raise ParseError(f"expected header 'x k n', got {text!r}", lineno)
            try:
                k, n = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("k and n must be integers", lineno) from None
            if k < 1 or n < k:
                raise ParseError(f"need n >= k >= 1, got k={k} n={n}", lineno)
            header = (k, n)
            continue
        if text.startswith("c"):
            parts = text.split()
            if len(parts) == 5 and parts[1] == "rng":
                provenance = RngSpec(seed=int(parts[3]), stream=int(parts[4]), algorithm=parts[2])
            elif len(parts) >= 3 and parts[1] == "src":
                provenance = " ".join(parts[2:])
            continue
        try:
            indices = [int(tok) for tok in text.split()]
        except ValueError:
            raise ParseError(f"non-integer index in {text!r}", lineno) from None
        if len(indices) != k:
            raise ParseError(f"equation must list exactly {k} indices, got {len(indices)}", lineno)
        if len(set(indices)) != k:
            raise ParseError("repeated index in equation", lineno)
        if indices != sorted(indices):
            raise ParseError("indices must be ascending", lineno)
        if indices[0] < 1 or indices[-1] > n:
            raise ParseError(f"index out of range 1..{n}", lineno)
        supports.append(tuple(j - 1 for j in indices))
    if header is None:
        raise ParseError("empty file", 1)
    if len(supports) != n:
        raise ParseError(f"expected {n} equation lines, found {len(supports)}", lineno if supports else 1)
    counts = [0] * n
    for support in supports:
        for j in support:
            counts[j] += 1
    for j, c in enumerate(counts):
        if c != k:
            raise ParseError(f"column {j + 1} appears in {c} equations, expected {k}", 1)
    matrix = BitMatrix.from_row_supports(n, supports, k_regular=k)
    return Instance(matrix=matrix, k=k, provenance=provenance)


def export_cnf(inst: Instance, path: str | Path):
    """DIMACS CNF equivalent of the parity system A x = 0.

    Each equation over variables S becomes the 2**(k-1) clauses that each
    forbid one odd-parity assignment of S, so a state violates exactly one
    clause per violated equation and the SAT landscape matches the linear
    one pointwise.
    """
    path = Path(path)
    n, k = inst.n, inst.k
    out = [f"p cnf {n} {n * (1 << (k - 1))}"]
    for i in range(n):
        support = inst.matrix.row_vector(i).support()
        for pattern in range(1 << k):
            if pattern.bit_count() % 2 == 0:
                continue
            clause = []
            for pos, var in enumerate(support):
                lit = var + 1
                clause.append(str(-lit if pattern >> pos & 1 else lit))
            out.append(" ".join(clause) + " 0")
    path.write_text("\n".join(out) + "\n")


@dataclass
class Report:
    """Structured experiment result with enough provenance to re-run."""

    experiment: str
    parameters: dict
    rng: RngSpec | None
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "format_version": self.format_version,
            "generator_version": __version__,
            "experiment": self.experiment,
            "parameters": self.parameters,
            "rng": self.rng.to_dict() if self.rng else None,
            "records": self.records,
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_json_default) + "\n"

    def write_json(self, path: str | Path):
        Path(path).write_text(self.to_json())

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.records:
            fields = []
            for rec in self.records:
                for key in rec:
                    if key not in fields:
                        fields.append(key)
            writer = csv.DictWriter(buf, fieldnames=fields)
            writer.writeheader()
            for rec in self.records:
                writer.writerow({k: _csv_value(v) for k, v in rec.items()})
        return buf.getvalue()

    def write_csv(self, path: str | Path):
        Path(path).write_text(self.to_csv())


def _json_default(obj):
    from fractions import Fraction

    if isinstance(obj, BitVector):
        return obj.to01()
    if isinstance(obj, Fraction):
        return {"numerator": str(obj.numerator), "denominator": str(obj.denominator)}
    if isinstance(obj, RngSpec):
        return obj.to_dict()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _csv_value(v):
    if isinstance(v, BitVector):
        return v.to01()
    return v
