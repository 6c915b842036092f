from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from graphvn.surd import ONE, ZERO, SurdScalar, _squarefree_split

rationals = st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def to_sympy(x: SurdScalar):
    return sum((sympy.Rational(q.numerator, q.denominator) * sympy.sqrt(d) for d, q in x.terms.items()),
               sympy.Integer(0))


def srat(q):
    return sympy.Rational(q.numerator, q.denominator)


@st.composite
def surds(draw):
    x = ZERO
    for _ in range(draw(st.integers(0, 3))):
        x = x + SurdScalar.sqrt(draw(rationals)) * draw(coeffs)
    return x


def test_canonical_strings():
    assert str(SurdScalar.sqrt(6)) == "sqrt(6)"
    assert str(SurdScalar.sqrt(12)) == "2*sqrt(3)"
    assert str(SurdScalar.rational(Fraction(1, 2)) + SurdScalar.sqrt(18)) == "1/2 + 3*sqrt(2)"
    assert str(ZERO) == "0"
    assert str(SurdScalar.sqrt(Fraction(1, 3))) == "1/3*sqrt(3)"
    assert str(ONE - SurdScalar.sqrt(2) * 2) == "1 - 2*sqrt(2)"


def test_squarefree_split():
    assert _squarefree_split(72) == (6, 2)
    assert _squarefree_split(1) == (1, 1)
    assert _squarefree_split(30) == (1, 30)


@given(rationals)
def test_sqrt_squares_back(q):
    r = SurdScalar.sqrt(q)
    assert r * r == SurdScalar.rational(q)
    assert all(set(sympy.factorint(d).values()) <= {1} for d in r.terms)


@given(rationals, rationals)
def test_sqrt_multiplicative(a, b):
    assert SurdScalar.sqrt(a) * SurdScalar.sqrt(b) == SurdScalar.sqrt(a * b)


@given(surds(), surds())
def test_arithmetic_against_sympy(x, y):
    assert sympy.expand(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
    assert sympy.expand(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0
    assert abs(float(x * y) - float(x) * float(y)) < 1e-9 * (1 + abs(float(x) * float(y)))


@given(surds(), surds(), surds())
def test_ring_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO and not (x - x)
    assert hash(x + y) == hash(y + x)


@given(surds(), rationals)
def test_rational_scaling(x, q):
    assert (x * q) / q == x
    assert x * 1 == x and 0 * x == ZERO


def test_structural_equality():
    assert SurdScalar({2: 0, 3: 1}) == SurdScalar.sqrt(3)
    assert SurdScalar.sqrt(8) != SurdScalar.sqrt(2)
    assert SurdScalar.sqrt(8) == SurdScalar.sqrt(2) * 2
    assert SurdScalar.rational(3) == 3 and SurdScalar.rational(Fraction(1, 2)) == Fraction(1, 2)
    assert SurdScalar.sqrt(Fraction(1, 2)).is_rational() is False
    assert (SurdScalar.sqrt(2) * SurdScalar.sqrt(2)).rational_part() == 2
