"""Small shared numeric helpers."""
from __future__ import annotations

import math
from fractions import Fraction


def exact_fraction(x) -> Fraction:
    """Normalize a parameter to an exact Fraction.

    Floats go through ``str`` so the decimal the caller wrote is honored
    (``0.3`` becomes 3/10, not the binary float), keeping floors and
    ceilings of products like ``beta*n`` exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact fraction")


def frac_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def entropy(x: float) -> float:
    """Natural-log binary entropy H(x) = -x log x - (1-x) log(1-x)."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"entropy argument must lie in (0, 1), got {x}")
    return -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
