"""Univariate power series helpers used by the constant-term engine.

Series are little-endian coefficient lists.  The generating function
g(z) = z/(e^z - 1) supplies Bernoulli numbers with the B_1 = -1/2 convention.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def _bernoulli_upto(n: int) -> tuple[Fraction, ...]:
    # B_m = -sum_{k<m} C(m+1, k) B_k / (m+1)
    out = [Fraction(1)]
    for m in range(1, n + 1):
        total = Fraction(0)
        for k in range(m):
            total += comb(m + 1, k) * out[k]
        out.append(-total / (m + 1))
    return tuple(out)


def bernoulli_number(k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _bernoulli_upto(k)[k]


def bern_series(n: int) -> list[Fraction]:
    """z/(e^z - 1) up to degree n."""
    b = _bernoulli_upto(n)
    fact = 1
    out = []
    for k in range(n + 1):
        if k:
            fact *= k
        out.append(b[k] / fact)
    return out


def exp_series(n: int, scale=Fraction(1)) -> list[Fraction]:
    """e^(scale z) up to degree n."""
    out = [Fraction(1)]
    scale = Fraction(scale)
    power = Fraction(1)
    fact = 1
    for k in range(1, n + 1):
        power *= scale
        fact *= k
        out.append(power / fact)
    return out


def series_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def series_pow(a, k, n):
    result = [1] + [0] * n
    base = list(a[: n + 1])
    while k:
        if k & 1:
            result = series_mul(result, base, n)
        base = series_mul(base, base, n)
        k >>= 1
    return result


def series_inverse(a, n):
    """Multiplicative inverse of a series with invertible constant term."""
    c0 = a[0]
    if hasattr(c0, "inverse"):
        inv0 = c0.inverse()
    else:
        inv0 = 1 / Fraction(c0)
    out = [inv0]
    for k in range(1, n + 1):
        acc = 0
        for j in range(1, k + 1):
            aj = a[j] if j < len(a) else 0
            if aj:
                term = aj * out[k - j]
                acc = acc + term if acc else term
        out.append(-inv0 * acc if acc else 0 * inv0)
    return out
