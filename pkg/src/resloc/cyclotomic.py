"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) of
Q[x]/(Phi_N), with Fraction coordinates.  Binary operations between elements
of different orders lift both operands to Q(zeta_lcm).  Since the power basis
is a vector-space basis, zero and rationality tests are coordinate checks.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(n: int) -> int:
    result = n
    p, m = 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (little-endian coefficients)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q[i] = c // den[-1]
        for j, d in enumerate(den):
            num[i + j] -= q[i] * d
    assert all(c == 0 for c in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, little-endian, computed by exact division
    of x^n - 1 by the product of Phi_d over proper divisors d of n."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = cyclotomic_polynomial(d)
            new = [0] * (len(den) + len(phi_d) - 1)
            for i, a in enumerate(den):
                for j, b in enumerate(phi_d):
                    new[i + j] += a * b
            den = new
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta_n^j in the power basis for j = 0, ..., n-1."""
    d = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    rows: list[tuple[Fraction, ...]] = []
    for j in range(d):
        row = [Fraction(0)] * d
        row[j] = Fraction(1)
        rows.append(tuple(row))
    for j in range(d, n):
        prev = rows[j - 1]
        row = [Fraction(0)] + list(prev[: d - 1])
        top = prev[d - 1]
        if top:
            for i in range(d):
                row[i] -= top * phi[i]
        rows.append(tuple(row))
    return tuple(rows)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _reduce_poly(n: int, coeffs) -> list[Fraction]:
    """Fold a polynomial in zeta_n of any degree into the power basis,
    using zeta^j = zeta^(j mod n) and the reduction table."""
    rows = _reduction_rows(n)
    d = euler_phi(n)
    out = [Fraction(0)] * d
    for j, c in enumerate(coeffs):
        if c:
            row = rows[j % n]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return out


class CyclotomicNumber:
    """An element of Q(zeta_order) in the power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == euler_phi(order)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "CyclotomicNumber":
        return CyclotomicNumber(1, (Fraction(q),))

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CyclotomicNumber":
        """zeta_n^k, with the order reduced to n/gcd(n,k)."""
        k %= n
        g = gcd(k, n)
        if g > 1:
            n, k = n // g, k // g
        if n == 1:
            return CyclotomicNumber.from_rational(1)
        return CyclotomicNumber(n, _reduction_rows(n)[k])

    @staticmethod
    def root_of_unity(q) -> "CyclotomicNumber":
        """e^(2*pi*i*q) for rational q."""
        q = Fraction(q)
        r = q - q.__floor__() if q.denominator != 1 else Fraction(0)
        return CyclotomicNumber.zeta(r.denominator, r.numerator)

    # -- structure ----------------------------------------------------

    def lift(self, m: int) -> "CyclotomicNumber":
        """Rewrite in Q(zeta_m); requires order | m."""
        if m == self.order:
            return self
        assert m % self.order == 0
        step = m // self.order
        rows = _reduction_rows(m)
        d = euler_phi(m)
        out = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                row = rows[(j * step) % m]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return CyclotomicNumber(m, out)

    def _pair(self, other: "CyclotomicNumber"):
        m = _lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number: %r" % (self,))
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_rational():
            q = self.coeffs[0]
            return CyclotomicNumber(other.order, tuple(q * c for c in other.coeffs))
        if other.is_rational():
            q = other.coeffs[0]
            return CyclotomicNumber(self.order, tuple(q * c for c in self.coeffs))
        a, b = self._pair(other)
        n = a.order
        conv = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CyclotomicNumber(n, _reduce_poly(n, conv))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return CyclotomicNumber(1, (1 / self.coeffs[0],))
        n = self.order
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = list(self.coeffs)
        # extended Euclid: find u with u*a = 1 mod Phi_n
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _poly_trim(r1)
            if len(r1) == 1:
                c = r1[0]
                inv = [x / c for x in s1]
                break
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        return CyclotomicNumber(n, _reduce_poly(n, _poly_trim(inv)))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta -> zeta^(-1)."""
        n = self.order
        rows = _reduction_rows(n)
        d = euler_phi(n)
        out = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                row = rows[(-j) % n] if j else rows[0]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return CyclotomicNumber(n, out)

    # -- comparisons / conversions -------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return "Cyc(%s)" % self.coeffs[0]
        return "Cyc(order=%d, %s)" % (self.order, list(self.coeffs))


def _coerce(x):
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x)
    return NotImplemented


# -- small polynomial helpers over Fraction (little-endian lists) ------


def _poly_trim(p):
    i = len(p)
    while i > 1 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    b = _poly_trim(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    return q, _poly_trim(a)
