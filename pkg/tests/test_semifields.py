import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scab.errors import DimensionError, DomainError
from scab.semifields import (SemifieldDescriptor, TropicalElement, deformed_add,
                             trop_add, trop_mul)


def trop(**exps):
    """trop(q1=2, q2=-1) -> q1^2*q2^-1 over 6 generators."""
    return TropicalElement(6, {int(k[1:]) - 1: Fraction(v) for k, v in exps.items()})


def test_trop_add_componentwise_min():
    a = trop(q1=2, q2=-1)
    b = trop(q1=1, q2=3)
    assert trop_add(a, b) == trop(q1=1, q2=-1)


def test_trop_add_idempotent():
    a = trop(q1=Fraction(3, 2), q3=-2)
    assert trop_add(a, a) == a


def test_trop_add_with_unit():
    assert trop_add(trop(q1=1), TropicalElement.one(6)) == TropicalElement.one(6)
    assert trop_add(trop(q1=-1), TropicalElement.one(6)) == trop(q1=-1)


def test_trop_mul_cancellation():
    assert trop_mul(trop(q1=1, q2=1), trop(q1=-1)) == trop(q2=1)
    a = trop(q1=2, q4=Fraction(1, 2))
    assert trop_mul(a, TropicalElement.one(6)) == a


def test_half_exponents_close_under_product():
    h = trop(q1=Fraction(1, 2))
    assert trop_mul(h, h) == trop(q1=1)


def test_mismatched_generator_sets():
    with pytest.raises(DimensionError):
        trop_add(TropicalElement.one(2), TropicalElement.one(3))


def test_exponent_denominator_restriction():
    with pytest.raises(DomainError):
        TropicalElement(2, {0: Fraction(1, 3)})


def test_json_round_trip():
    a = trop(q1=Fraction(-3, 2), q5=2)
    data = a.to_json()
    assert data == {"exp": {"0": "-3/2", "4": "2/1"}}
    assert TropicalElement.from_json(6, data) == a


_exps = st.integers(min_value=-20, max_value=20).map(lambda v: Fraction(v, 2))


@st.composite
def monomials(draw):
    support = draw(st.lists(st.integers(min_value=0, max_value=5),
                            max_size=4, unique=True))
    return TropicalElement(6, {i: draw(_exps) for i in support})


@settings(max_examples=80, deadline=None)
@given(monomials(), monomials(), monomials())
def test_tropical_semifield_axioms(a, b, c):
    assert trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c))
    assert trop_add(a, b) == trop_add(b, a)
    assert trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c))


def test_deformed_add_ordinary_at_k_one():
    assert deformed_add(1, 2, 3) == pytest.approx(5.0)


def test_deformed_add_tends_to_min():
    assert abs(deformed_add(-1000, 2, 3) - 2.0) < 1e-2
    # closed form at equal arguments: (2 y^k)^(1/k)
    assert deformed_add(-1000, 2, 2) == pytest.approx(2 * 2 ** (-1 / 1000))
    assert abs(deformed_add(-1000, 2, 2) - 2.0) < 1e-2


def test_deformed_add_monotone_toward_min():
    values = [deformed_add(k, 2.0, 3.0) for k in (-1, -10, -100, -1000)]
    assert all(v2 >= v1 for v1, v2 in zip(values, values[1:]))
    assert values[-1] == pytest.approx(2.0, abs=1e-2)


def test_deformed_add_distributes_over_multiplication():
    import random
    rng = random.Random(5)
    for _ in range(50):
        k = rng.choice([1.5, 1, -2, -7.5])
        y, z, scale = (rng.uniform(0.1, 10) for _ in range(3))
        lhs = deformed_add(k, y * scale, z * scale)
        rhs = deformed_add(k, y, z) * scale
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_deformed_add_domain_errors():
    with pytest.raises(DomainError):
        deformed_add(0, 1, 1)
    with pytest.raises(DomainError):
        deformed_add(-1, -1, 1)


def test_deformed_add_no_overflow_at_large_negative_k():
    assert deformed_add(-1000, 1e-8, 3.0) == pytest.approx(1e-8)


def test_descriptor_kinds():
    t = SemifieldDescriptor.tropical(3)
    assert t.one() == TropicalElement.one(3)
    trivial = SemifieldDescriptor.trivial()
    assert trivial.one().ngens == 0
    pos = SemifieldDescriptor.positive_real()
    assert pos.oplus(2.0, 3.0) == 5.0
    dfm = SemifieldDescriptor.deformed_real(-2)
    assert dfm.oplus(2.0, 2.0) == pytest.approx(deformed_add(-2, 2, 2))
    with pytest.raises(DomainError):
        SemifieldDescriptor.deformed_real(0)


def test_product_semifield_componentwise():
    prod = SemifieldDescriptor.product([
        SemifieldDescriptor.tropical(2), SemifieldDescriptor.positive_real()])
    a = (TropicalElement(2, {0: Fraction(1)}), 2.0)
    b = (TropicalElement(2, {1: Fraction(-1)}), 3.0)
    s = prod.oplus(a, b)
    assert s[0] == TropicalElement(2, {1: Fraction(-1)})
    assert s[1] == 5.0
    m = prod.mul(a, b)
    assert m[0] == TropicalElement(2, {0: Fraction(1), 1: Fraction(-1)})
    assert m[1] == 6.0
