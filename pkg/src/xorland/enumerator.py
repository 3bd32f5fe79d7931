"""Exact weight-enumerator arithmetic and its asymptotic approximations.

The exact layer works in big integers and rationals: coefficients of large
polynomial powers, the even-overlap enumerator B_k(n,w), and the weighted
sum S_k(n) that bounds the expected kernel size of a random k-regular
matrix.  The asymptotic layer (Gaussian local limit, saddle-point formula,
large-deviation bounds) is float/log-space and is only ever validated
against the exact layer, never against itself.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

from scipy.optimize import brentq

from ._util import entropy, exact_fraction


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial with arbitrary-precision integer coefficients."""

    coeffs: tuple[int, ...]  # index = degree; trailing zeros trimmed

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficients must be trimmed")
        for c in self.coeffs:
            if not isinstance(c, int):
                raise TypeError("coefficients must be ints")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def coeff(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly.from_coeffs([d * c for d, c in enumerate(self.coeffs)][1:])

    def support(self) -> tuple[int, ...]:
        return tuple(d for d, c in enumerate(self.coeffs) if c)

    def support_gcd(self) -> int:
        g = 0
        for d in self.support():
            g = math.gcd(g, d)
        return g

    def halve_degrees(self) -> "IntPoly":
        """Substitute z**2 -> z; requires all nonzero terms at even degree."""
        if any(d % 2 for d in self.support()):
            raise ValueError("polynomial has odd-degree terms")
        return IntPoly.from_coeffs(self.coeffs[::2])


def _mul_trunc(a: Sequence[int], b: Sequence[int], max_deg: int) -> list[int]:
    out = [0] * (min(len(a) + len(b) - 1, max_deg + 1))
    top = len(out)
    for i, ai in enumerate(a):
        if ai == 0 or i >= top:
            continue
        stop = min(len(b), top - i)
        for j in range(stop):
            out[i + j] += ai * b[j]
    return out


def poly_power_coeff(p: IntPoly, n: int, big_n: int) -> int:
    """Exact coefficient of z**big_n in p(z)**n, by truncated repeated squaring."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if big_n < 0:
        raise ValueError("target degree must be >= 0")
    if p.degree < 0:
        raise ValueError("zero polynomial")
    if big_n > n * p.degree:
        return 0
    return poly_power_coeffs(p, n, big_n)[big_n]


def poly_power_coeffs(p: IntPoly, n: int, max_deg: int) -> list[int]:
    """Coefficients 0..max_deg of p(z)**n (truncated repeated squaring)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if p.degree < 0:
        raise ValueError("zero polynomial")
    result = [1]
    base = list(p.coeffs[: max_deg + 1])
    e = n
    while e:
        if e & 1:
            result = _mul_trunc(result, base, max_deg)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, max_deg)
    result += [0] * (max_deg + 1 - len(result))
    return result


def even_weight_poly(k: int) -> IntPoly:
    """Generating polynomial of even-size subsets of a k-set.

    Equals ((1+z)**k + (1-z)**k) / 2: coefficient C(k, 2j) at degree 2j.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    coeffs = [comb(k, d) if d % 2 == 0 else 0 for d in range(k + 1)]
    return IntPoly.from_coeffs(coeffs)


def weight_enumerator(k: int, n: int, w: int) -> int:
    """B_k(n, w): number of even-overlap row compositions, exactly.

    Coefficient of z**(k*w) in the n-th power of the even-subset
    polynomial; zero whenever k*w is odd.
    """
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    if (k * w) % 2:
        return 0
    half = even_weight_poly(k).halve_degrees()
    target = k * w // 2
    if target > n * half.degree:
        return 0
    return poly_power_coeffs(half, n, target)[target]


def weight_enumerator_table(k: int, n: int) -> list[int]:
    """B_k(n, w) for w = 0..n, sharing one power computation."""
    half = even_weight_poly(k).halve_degrees()
    max_half_deg = min(k * n // 2, n * half.degree)
    table = poly_power_coeffs(half, n, max_half_deg)
    out = []
    for w in range(n + 1):
        if (k * w) % 2:
            out.append(0)
        else:
            t = k * w // 2
            out.append(table[t] if t <= max_half_deg else 0)
    return out


class RegionTag(enum.Enum):
    """Summation regions for S_k(n), split at n/(2k), (n -+ n^(3/5))/2, n(1-1/(2k))."""

    LEFT_EXTREME = "left-extreme"
    LEFT_LARGE = "left-large"
    CENTRAL = "central"
    RIGHT_LARGE = "right-large"
    RIGHT_EXTREME = "right-extreme"


def region_of(k: int, n: int, w: int) -> RegionTag:
    """Exact region membership; comparisons against n^(3/5) use 5th powers."""
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    d = 2 * w - n
    if abs(d) ** 5 <= n**3:  # |w - n/2| <= n^(3/5) / 2
        return RegionTag.CENTRAL
    if 2 * k * w < n:
        return RegionTag.LEFT_EXTREME
    if 2 * k * w > (2 * k - 1) * n:
        return RegionTag.RIGHT_EXTREME
    return RegionTag.LEFT_LARGE if d < 0 else RegionTag.RIGHT_LARGE


class KernelBoundSum(NamedTuple):
    total: Fraction
    regions: dict | None


def kernel_bound_sum(k: int, n: int, with_regions: bool = False) -> KernelBoundSum:
    """S_k(n) = sum_w C(n,w) * B_k(n,w) / C(kn,kw), as an exact rational.

    Converges to 2 for odd k and to 4 for even k.  With ``with_regions``
    the per-region partial sums (which add up to the total exactly) are
    returned as well.
    """
    if n < k:
        raise ValueError("need n >= k")
    table = weight_enumerator_table(k, n)
    total = Fraction(0)
    regions = {tag: Fraction(0) for tag in RegionTag} if with_regions else None
    for w in range(n + 1):
        b = table[w]
        if b == 0:
            continue
        term = Fraction(comb(n, w) * b, comb(k * n, k * w))
        total += term
        if regions is not None:
            regions[region_of(k, n, w)] += term
    return KernelBoundSum(total, regions)


def kernel_expectation_bound(k: int, n: int, rho) -> Fraction:
    """Upper bound rho**-1 * S_k(n) on the expected kernel size (large n).

    ``rho`` must be a positive constant below exp(-(k-1)**2/2), the
    limiting probability that a configuration is simple.
    """
    rho_f = exact_fraction(rho)
    if not 0 < rho_f < exact_fraction(math.exp(-((k - 1) ** 2) / 2)):
        raise ValueError("rho must lie in (0, exp(-(k-1)^2/2))")
    return kernel_bound_sum(k, n).total / rho_f


def _check_local_limit_poly(p: IntPoly):
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if p.coeff(0) <= 0:
        raise ValueError("polynomial must have a positive constant term")
    if any(c < 0 for c in p.coeffs):
        raise ValueError("polynomial must have nonnegative coefficients")
    if p.support_gcd() != 1:
        raise ValueError(
            "gcd of the support degrees must be 1; substitute z**2 -> z first "
            "(halve_degrees) for even polynomials"
        )


def poly_moments(p: IntPoly) -> tuple[Fraction, Fraction]:
    """(mu, sigma^2) of the coefficient distribution of large powers of p."""
    p1 = Fraction(p.evaluate(1))
    d1 = Fraction(p.derivative().evaluate(1))
    d2 = Fraction(p.derivative().derivative().evaluate(1))
    mu = d1 / p1
    var = d2 / p1 + mu - mu * mu
    return mu, var


def local_limit_approx(p: IntPoly, n: int, big_n: int, log: bool = False) -> float:
    """Gaussian pointwise approximation to [z**big_n] of p(z)**n.

    Valid near the center big_n = mu*n (enforced within n^(3/5)).  With
    ``log=True`` the natural log of the approximation is returned, which
    stays finite when the coefficient itself overflows a float.
    """
    _check_local_limit_poly(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    mu, var = poly_moments(p)
    if var <= 0:
        raise ValueError("degenerate polynomial: zero variance")
    nu = big_n - mu * n
    if abs(float(nu)) > n**0.6:
        raise ValueError("big_n lies outside the central window mu*n +- n^(3/5)")
    sigma = math.sqrt(float(var))
    log_val = (
        n * math.log(p.evaluate(1))
        - float(nu) ** 2 / (2.0 * float(var) * n)
        - math.log(math.sqrt(2.0 * math.pi * n) * sigma)
    )
    return log_val if log else math.exp(log_val)


def saddle_point_approx(p: IntPoly, n: int, big_n: int, log: bool = False) -> float:
    """Saddle-point approximation to [z**big_n] of p(z)**n.

    Solves K'(xi) = 0 for K(z) = log p(z) - lambda log z by safeguarded
    root finding and evaluates p(xi)**n / (xi**(lambda n + 1)
    sqrt(2 pi n K''(xi))).
    """
    _check_local_limit_poly(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = big_n / n
    if not 0 < lam < p.degree:
        raise ValueError("big_n / n must lie in (0, degree)")

    def mean_shift(x: float) -> float:
        return x * p.derivative().evaluate(x) / p.evaluate(x) - lam

    lo, hi = 1.0, 1.0
    while mean_shift(lo) > 0:
        lo /= 2.0
    while mean_shift(hi) < 0:
        hi *= 2.0
    xi = brentq(mean_shift, lo, hi, xtol=1e-14, rtol=1e-15) if lo != hi else 1.0
    p_xi = p.evaluate(xi)
    ratio1 = p.derivative().evaluate(xi) / p_xi
    ratio2 = p.derivative().derivative().evaluate(xi) / p_xi
    k2 = lam / xi**2 - ratio1**2 + ratio2
    log_val = n * math.log(p_xi) - (lam * n + 1) * math.log(xi) - 0.5 * math.log(2.0 * math.pi * n * k2)
    return log_val if log else math.exp(log_val)


def saddle_upper_bound(k: int, n: int, w: int, xi: float | None = None, log: bool = False) -> float:
    """Rigorous bound B_k(n,w) <= (E_k(xi) / xi**(k w/n))**n for any xi > 0.

    The default contour radius xi = (lambda/(1-lambda))**((k-1)/k)
    approximates the saddle point; evaluation is in log space.
    """
    if not 0 < w < n:
        raise ValueError("need 0 < w < n")
    lam = w / n
    if xi is None:
        xi = (lam / (1.0 - lam)) ** ((k - 1) / k)
    if xi <= 0:
        raise ValueError("xi must be positive")
    ek = even_weight_poly(k)
    log_val = n * (math.log(float(ek.evaluate(xi))) - k * lam * math.log(xi))
    return log_val if log else math.exp(log_val)


class TauInequality(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    equality: bool


def tau_power_inequality(k: int, tau: float) -> TauInequality:
    """Evaluate E_k(tau**(k-1)) <= (1 + tau**k)**(k-1); equality iff tau = 1."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    ek = even_weight_poly(k)
    if tau == 1:
        lhs = float(ek.evaluate(1))
        rhs = float(2 ** (k - 1))
        return TauInequality(lhs, rhs, True, True)
    lhs = float(ek.evaluate(tau ** (k - 1)))
    rhs = float((1.0 + tau**k) ** (k - 1))
    return TauInequality(lhs, rhs, lhs <= rhs, math.isclose(lhs, rhs, rel_tol=1e-15))


def extreme_region_bound(k: int, n: int, w: int) -> int:
    """Composition-counting bound C(kw/2 + n - 1, n - 1) * C(k,2)**(kw/2) on B_k(n,w)."""
    if w < 1:
        raise ValueError("w must be >= 1")
    if (k * w) % 2:
        raise ValueError("k*w must be even")
    half = k * w // 2
    return comb(half + n - 1, n - 1) * comb(k, 2) ** half


def extreme_exponent(k: int, n: int, w: int) -> float:
    """Log-scale majorant of the w-th summand of S_k(n) in the extreme region."""
    if not 0 < w < n:
        raise ValueError("need 0 < w < n")
    half = k * w / 2.0
    return (
        -(k - 1) * n * entropy(w / n)
        + (half + n - 1) * entropy((n - 1) / (half + n - 1))
        + half * math.log(comb(k, 2))
    )


def extreme_exponent_second_derivative(k: int, n: int, w: int) -> float:
    """Closed form of the second w-derivative of extreme_exponent; positive on (0, n)."""
    if not 0 < w < n:
        raise ValueError("need 0 < w < n")
    return (k * (k * n - 1) * w + n * (n - 1) * (k - 2)) / ((n - w) * w * (k * w + 2 * n - 2))


def stirling_bounds(n: int) -> tuple[float, float]:
    """Robbins' two-sided bounds on n!: sqrt(2 pi) n^(n+1/2) e^(-n+1/(12n+1)) and e^(-n+1/(12n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = math.sqrt(2 * math.pi) * math.exp(n * math.log(n) - n + math.log(n) / 2)
    return base * math.exp(1 / (12 * n + 1)), base * math.exp(1 / (12 * n))


def binomial_entropy_bound(n: int, w: int) -> float:
    """exp(n H(w/n)) >= C(n, w) for 0 < w < n."""
    return math.exp(n * entropy(w / n))


def binomial_ratio_bound(k: int, n: int, w: int) -> float:
    """sqrt(k) exp(-(k-1) n H(w/n) + 1/(6kw)) >= C(n,w)/C(kn,kw)."""
    return math.sqrt(k) * math.exp(-(k - 1) * n * entropy(w / n) + 1 / (6 * k * w))
