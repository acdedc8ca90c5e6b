"""Scalars over a valued field surrogate.

A :class:`ValuedScalar` is a finite sum ``sum c_q t^q`` with rational
exponents ``q`` and nonzero rational coefficients ``c_q``.  The valuation is
the smallest exponent and the residue is its coefficient.  These generalized
polynomials are closed under addition and multiplication, which is all the
tropical machinery needs; division is deliberately absent.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import lcm
from typing import Mapping, Union

Rational = Fraction
INFINITY = math.inf

RationalLike = Union[int, Fraction, str]


class ValuedScalar:
    __slots__ = ("_terms", "denominator_bound")

    def __init__(self, terms: Mapping[RationalLike, RationalLike] | None = None,
                 denominator_bound: int | None = None):
        clean: dict[Fraction, Fraction] = {}
        for e, c in (terms or {}).items():
            e, c = Fraction(e), Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        den = 1
        for e in self._terms:
            den = lcm(den, e.denominator)
        if denominator_bound is not None:
            if denominator_bound < 1 or denominator_bound % den:
                raise ValueError("denominator bound must be a positive multiple of all exponent denominators")
            den = denominator_bound
        self.denominator_bound = den

    @classmethod
    def constant(cls, c: RationalLike) -> ValuedScalar:
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: RationalLike, coeff: RationalLike = 1) -> ValuedScalar:
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> ValuedScalar:
        other = _coerce(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return ValuedScalar(t)

    __radd__ = __add__

    def __neg__(self) -> ValuedScalar:
        return ValuedScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> ValuedScalar:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> ValuedScalar:
        return _coerce(other) - self

    def __mul__(self, other) -> ValuedScalar:
        other = _coerce(other)
        t: dict[Fraction, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                t[e1 + e2] = t.get(e1 + e2, Fraction(0)) + c1 * c2
        return ValuedScalar(t)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ValuedScalar.constant(other)
        return isinstance(other, ValuedScalar) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "ValuedScalar(0)"
        parts = []
        for e, c in self._terms.items():
            parts.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return "ValuedScalar(" + " + ".join(parts) + ")"


def _coerce(x) -> ValuedScalar:
    if isinstance(x, ValuedScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ValuedScalar.constant(x)
    return NotImplemented


def val(s: ValuedScalar) -> Fraction | float:
    """Valuation: the smallest exponent, or ``INFINITY`` for zero."""
    if not s._terms:
        return INFINITY
    return next(iter(s._terms))


def residue(s: ValuedScalar) -> Fraction:
    """Coefficient of the lowest power of ``t``."""
    if not s._terms:
        raise ValueError("the zero scalar has no residue")
    return next(iter(s._terms.values()))


def add(a: ValuedScalar, b: ValuedScalar) -> ValuedScalar:
    return a + b


def mul(a: ValuedScalar, b: ValuedScalar) -> ValuedScalar:
    return a * b


def neg(a: ValuedScalar) -> ValuedScalar:
    return -a


def rescale_value_group(s: ValuedScalar, k: int) -> ValuedScalar:
    """Embed ``s`` into the value group ``(1/(D*k))Z``; values are unchanged."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return ValuedScalar(s._terms, denominator_bound=lcm(s.denominator_bound, k))


def t(exponent: RationalLike = 1, coeff: RationalLike = 1) -> ValuedScalar:
    """Shorthand for ``coeff * t^exponent``."""
    return ValuedScalar.monomial(exponent, coeff)
