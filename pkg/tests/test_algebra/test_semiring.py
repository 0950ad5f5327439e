"""Tests for the Boolean and extended-natural semirings."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omega_pushdown.algebra.semiring import (
    BOOLEAN,
    INF,
    NAT_INF,
    NatInfSemiring,
    SemiringValue,
    get_semiring,
    sr_omega,
    sr_product,
    sr_star,
    sr_sum,
)
from omega_pushdown.config import SemiringName

nat_inf_values = st.one_of(st.integers(min_value=0, max_value=10**6), st.just(INF))


def test_boolean_star_and_omega() -> None:
    """Test that every Boolean star is 1 and omega is the identity."""
    assert sr_star(BOOLEAN, False) is True
    assert sr_star(BOOLEAN, True) is True
    assert sr_omega(BOOLEAN, False) is False
    assert sr_omega(BOOLEAN, True) is True


def test_nat_inf_star() -> None:
    """Test 0* = 1 and a* = ∞ for every nonzero a."""
    assert sr_star(NAT_INF, 0) == 1
    assert sr_star(NAT_INF, 1) is INF
    assert sr_star(NAT_INF, 7) is INF
    assert sr_star(NAT_INF, INF) is INF


def test_nat_inf_omega() -> None:
    """Test a^ω for 0, 1, larger values and ∞."""
    assert sr_omega(NAT_INF, 0) == 0
    assert sr_omega(NAT_INF, 1) == 1
    assert sr_omega(NAT_INF, 2) is INF
    assert sr_omega(NAT_INF, INF) is INF


def test_nat_inf_absorption() -> None:
    """Test that ∞ absorbs except against 0."""
    assert NAT_INF.mul(INF, 0) == 0
    assert NAT_INF.mul(0, INF) == 0
    assert NAT_INF.mul(INF, 3) is INF
    assert NAT_INF.add(INF, 0) is INF


def test_sum_and_product() -> None:
    """Test the family helpers, including the empty family."""
    assert sr_sum(NAT_INF, [1, 2, 3]) == 6
    assert sr_sum(NAT_INF, []) == 0
    assert sr_product(NAT_INF, [2, 3]) == 6
    assert sr_product(BOOLEAN, []) is True
    assert sr_sum(BOOLEAN, [False, True]) is True


def test_bounded_saturation() -> None:
    """Test that a bound turns large finite results into ∞."""
    bounded = NatInfSemiring(bound=10)
    assert bounded.add(6, 4) == 10
    assert bounded.add(6, 5) is INF
    assert bounded.mul(4, 3) is INF
    assert bounded.parse("11") is INF


def test_parse_and_format() -> None:
    """Test weight literals for both semirings."""
    assert BOOLEAN.parse("1") is True
    assert BOOLEAN.parse("0") is False
    assert NAT_INF.parse("inf") is INF
    assert NAT_INF.parse("42") == 42
    assert NAT_INF.format(INF) == "inf"
    assert BOOLEAN.format(True) == "1"
    with pytest.raises(ValueError, match="bad weight literal"):
        BOOLEAN.parse("2")
    with pytest.raises(ValueError, match="bad weight literal"):
        NAT_INF.parse("-1")


def test_coerce_between_instances() -> None:
    """Test that 𝔹 → ℕ^∞ maps 1 to 1 and ℕ^∞ → 𝔹 takes the support."""
    assert NAT_INF.coerce(True) == 1
    assert NAT_INF.coerce(False) == 0
    assert BOOLEAN.coerce(5) is True
    assert BOOLEAN.coerce(INF) is True
    assert BOOLEAN.coerce(0) is False


def test_contains() -> None:
    """Test carrier membership; bools are not naturals."""
    assert NAT_INF.contains(3)
    assert NAT_INF.contains(INF)
    assert not NAT_INF.contains(True)
    assert not NAT_INF.contains(-1)
    assert BOOLEAN.contains(False)
    assert not BOOLEAN.contains(1)


def test_get_semiring() -> None:
    """Test registry lookup by name."""
    assert get_semiring("boolean") is BOOLEAN
    assert get_semiring(SemiringName.NAT_INF) is NAT_INF
    assert get_semiring("nat-inf", bound=5) == NatInfSemiring(bound=5)
    with pytest.raises(ValueError):
        get_semiring("tropical")


@given(nat_inf_values)
def test_nat_inf_star_fixed_point(a: SemiringValue) -> None:
    """Test a* = 1 + a·a* on sampled values."""
    star = NAT_INF.star(a)
    assert star == NAT_INF.add(1, NAT_INF.mul(a, star))


@given(nat_inf_values)
def test_nat_inf_omega_fixed_point(a: SemiringValue) -> None:
    """Test a^ω = a·a^ω on sampled values."""
    omega = NAT_INF.omega(a)
    assert omega == NAT_INF.mul(a, omega)


@given(nat_inf_values, nat_inf_values, nat_inf_values)
def test_nat_inf_distributive(a: SemiringValue, b: SemiringValue, c: SemiringValue) -> None:
    """Test a(b + c) = ab + ac."""
    left = NAT_INF.mul(a, NAT_INF.add(b, c))
    right = NAT_INF.add(NAT_INF.mul(a, b), NAT_INF.mul(a, c))
    assert left == right


@given(nat_inf_values, nat_inf_values)
def test_nat_inf_commutative(a: SemiringValue, b: SemiringValue) -> None:
    """Test commutativity of both operations."""
    assert NAT_INF.add(a, b) == NAT_INF.add(b, a)
    assert NAT_INF.mul(a, b) == NAT_INF.mul(b, a)
