import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropkit import ValuedScalar, add, mul, neg, rescale_value_group, residue, t, val
from tropkit.serialize import scalar_from_json, scalar_to_json

exponents = st.fractions(min_value=-5, max_value=5, max_denominator=6)
coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
scalars = st.dictionaries(exponents, coeffs, max_size=4).map(ValuedScalar)
nonzero = scalars.filter(lambda s: not s.is_zero())


def test_zero_is_empty_map():
    assert ValuedScalar({1: 0}).terms == {}
    assert add(t(1, 2), t(Fraction(2, 2), -2)).is_zero()


def test_residue_of_zero_raises():
    with pytest.raises(ValueError):
        residue(ValuedScalar())


def test_rescale_rejects_bad_k():
    with pytest.raises(ValueError):
        rescale_value_group(t(1), 0)


def test_denominator_bound_tracks_exponents():
    assert ValuedScalar({Fraction(1, 6): 1, Fraction(1, 4): 1}).denominator_bound == 12
    assert rescale_value_group(t(Fraction(1, 2)), 3).denominator_bound == 6


@given(nonzero, nonzero)
def test_valuation_is_additive(a, b):
    assert val(mul(a, b)) == val(a) + val(b)
    assert residue(mul(a, b)) == residue(a) * residue(b)


@given(scalars, scalars)
def test_ultrametric_inequality(a, b):
    s = add(a, b)
    assert val(s) >= min(val(a), val(b))
    if val(a) != val(b):
        assert val(s) == min(val(a), val(b))


@given(scalars)
def test_exact_cancellation(a):
    assert add(a, neg(a)).is_zero()
    assert val(add(a, neg(a))) == math.inf


@given(scalars, st.integers(1, 12))
def test_rescale_preserves_values(a, k):
    r = rescale_value_group(a, k)
    assert r == a and val(r) == val(a)


@settings(max_examples=50)
@given(scalars)
def test_json_round_trip(a):
    assert scalar_from_json(scalar_to_json(a)) == a
