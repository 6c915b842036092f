"""Exact real numbers of the form sum_d q_d * sqrt(d).

``d`` ranges over squarefree positive integers and ``q_d`` over nonzero
rationals.  The set is closed under addition and multiplication because
``sqrt(d1) * sqrt(d2) = g * sqrt(d1 d2 / g^2)`` with ``g = gcd(d1, d2)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

from .lattice import factor_rational


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d)."""
    s = d = 1
    if n == 1:
        return 1, 1
    for p, k in factor_rational(n).items():
        s *= p ** (k // 2)
        if k % 2:
            d *= p
    return s, d


class SurdScalar:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for d, q in (terms or {}).items():
            q = Fraction(q)
            if q:
                clean[int(d)] = q
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def rational(cls, q) -> "SurdScalar":
        return cls({1: q})

    @classmethod
    def sqrt(cls, q) -> "SurdScalar":
        """sqrt of a nonnegative rational a/b with a = s1^2 d1, b = s2^2 d2."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls()
        s1, d1 = _squarefree_split(q.numerator)
        s2, d2 = _squarefree_split(q.denominator)
        return cls({d1 * d2: Fraction(s1, s2 * d2)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    @staticmethod
    def _coerce(other):
        if isinstance(other, SurdScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return SurdScalar({1: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for d, q in other._terms.items():
            out[d] = out.get(d, 0) + q
        return SurdScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return SurdScalar({d: -q for d, q in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for d1, q1 in self._terms.items():
            for d2, q2 in other._terms.items():
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                out[d] = out.get(d, 0) + q1 * q2 * g
        return SurdScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return math.fsum(float(q) * math.sqrt(d) for d, q in self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d, q in self._terms.items():
            mag = abs(q)
            num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if d == 1:
                body = num
            elif mag == 1:
                body = f"sqrt({d})"
            else:
                body = f"{num}*sqrt({d})"
            parts.append(("-" if q < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"SurdScalar({str(self)!r})"


ZERO = SurdScalar()
ONE = SurdScalar.rational(1)
