"""Quasipolynomials and exact interpolation from integer samples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import solve


@dataclass
class Quasipolynomial:
    """Period L and one polynomial (little-endian coefficients) per residue
    class mod L: q(k) = polys[k % L](k)."""

    period: int
    polys: list

    def __call__(self, k: int) -> Fraction:
        coeffs = self.polys[k % self.period]
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * k + c
        return acc

    def degree(self) -> int:
        return max((len(p) - 1 for p in self.polys), default=0)

    def to_json(self) -> dict:
        return {"period": self.period,
                "polys": [[str(c) for c in p] for p in self.polys]}

    @staticmethod
    def from_json(data) -> "Quasipolynomial":
        return Quasipolynomial(int(data["period"]),
                               [[Fraction(c) for c in p] for p in data["polys"]])


class InterpolationMismatch(Exception):
    pass


def _fit_polynomial(points):
    ks = [Fraction(k) for k, _ in points]
    vander = [[k**j for j in range(len(points))] for k in ks]
    coeffs = solve(vander, [v for _, v in points])
    if coeffs is None:
        raise ValueError("degenerate interpolation nodes")
    return list(coeffs)


def interpolate_quasipolynomial(evaluate, period: int, degree: int,
                                start: int = 1, extra: int = 2) -> Quasipolynomial:
    """Fit one degree-`degree` polynomial per residue class mod `period` from
    exact samples evaluate(k), and verify each on `extra` held-out samples."""
    polys = [None] * period
    for a in range(period):
        k0 = start + ((a - start) % period)
        ks = [k0 + period * j for j in range(degree + 1 + extra)]
        samples = [(k, Fraction(evaluate(k))) for k in ks]
        coeffs = _fit_polynomial(samples[: degree + 1])
        q = Quasipolynomial(1, [coeffs])
        for k, v in samples[degree + 1:]:
            if q(k) != v:
                raise InterpolationMismatch(
                    "degree %d fit fails at k=%d: %s != %s" % (degree, k, q(k), v))
        polys[a] = coeffs
    return Quasipolynomial(period, polys)
