"""The universal exact value type: Laurent polynomials in the formal unit
U = 2*pi*i with cyclotomic coefficients.

Even powers of U encode powers of pi (U^2 = -4*pi^2), so values such as
pi^2 - 8 are exact Scalars.  Negative powers of U occur in intermediate
constant-term computations and cancel in final results.
"""

from __future__ import annotations

import cmath
import json
from fractions import Fraction

from .cyclotomic import CyclotomicNumber


def _coerce_cyc(x):
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x)
    return None


class Scalar:
    """Finite map {power of U: CyclotomicNumber}, zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[int, CyclotomicNumber] = {}
        if terms:
            for k, v in terms.items():
                v = _coerce_cyc(v)
                if not v.is_zero():
                    self.terms[k] = v

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({0: 1})

    @staticmethod
    def from_rational(q) -> "Scalar":
        return Scalar({0: Fraction(q)})

    @staticmethod
    def from_cyclotomic(c: CyclotomicNumber) -> "Scalar":
        return Scalar({0: c})

    @staticmethod
    def u_power(k: int, coeff=1) -> "Scalar":
        return Scalar({k: coeff})

    @staticmethod
    def root_of_unity(q) -> "Scalar":
        return Scalar({0: CyclotomicNumber.root_of_unity(q)})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        if not self.terms:
            return True
        return set(self.terms) == {0} and self.terms[0].is_rational()

    def as_rational(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("not a pure rational: %r" % (self,))
        return self.terms[0].as_rational()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        result = Scalar()
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self):
        result = Scalar()
        result.terms = {k: -v for k, v in self.terms.items()}
        return result

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_scalar(other) - self

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Scalar()
        out: dict[int, CyclotomicNumber] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                p = v1 * v2
                if k in out:
                    s = out[k] + p
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not p.is_zero():
                    out[k] = p
        result = Scalar()
        result.terms = out
        return result

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) != 1:
            raise ValueError("Scalar division only by monomials in U")
        (k, v), = other.terms.items()
        vinv = v.inverse()
        result = Scalar()
        result.terms = {kk - k: vv * vinv for kk, vv in self.terms.items()}
        return result

    def u_shift(self, k: int) -> "Scalar":
        """Multiply by U^k."""
        result = Scalar()
        result.terms = {kk + k: v for kk, v in self.terms.items()}
        return result

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- conversions -----------------------------------------------------

    def to_complex(self) -> complex:
        u = 2j * cmath.pi
        return sum(v.to_complex() * u**k for k, v in self.terms.items())

    def to_json(self) -> list:
        out = []
        for k in sorted(self.terms):
            c = self.terms[k]
            out.append({
                "upow": k,
                "order": c.order,
                "coeffs": [str(x) for x in c.coeffs],
            })
        return out

    @staticmethod
    def from_json(data) -> "Scalar":
        if isinstance(data, str):
            data = json.loads(data)
        result = Scalar()
        for term in data:
            c = CyclotomicNumber(term["order"], [Fraction(x) for x in term["coeffs"]])
            if not c.is_zero():
                result.terms[term["upow"]] = c
        return result

    def pretty(self) -> str:
        """Human form with pi substituted back: U^(2m) = (-4 pi^2)^m."""
        if self.is_zero():
            return "0"
        pieces = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k % 2 == 0 and c.is_rational():
                q = c.as_rational() * Fraction(-4) ** (k // 2)
                if k == 0:
                    pieces.append(_fmt_q(q))
                else:
                    pieces.append(_fmt_coeff(q) + "pi^%d" % k)
            else:
                base = "U^%d" % k if k != 1 else "U"
                if c.is_rational():
                    pieces.append(_fmt_coeff(c.as_rational()) + base)
                else:
                    pieces.append("(%s)*%s" % (_fmt_cyc(c), base if k else "1"))
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return "Scalar(%s)" % self.pretty()


def _fmt_q(q: Fraction) -> str:
    return str(q)


def _fmt_coeff(q: Fraction) -> str:
    if q == 1:
        return ""
    if q == -1:
        return "-"
    return str(q) + "*"


def _fmt_cyc(c: CyclotomicNumber) -> str:
    parts = []
    for j, x in enumerate(c.coeffs):
        if x:
            parts.append("%s*z%d^%d" % (x, c.order, j) if j else str(x))
    return " + ".join(parts) if parts else "0"


def _coerce_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_rational(x)
    if isinstance(x, CyclotomicNumber):
        return Scalar.from_cyclotomic(x)
    return NotImplemented
