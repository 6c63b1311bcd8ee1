"""
Tests for the two-point energy balance (classical and effective-mass forms).
"""

import math

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.conservation import (
    BalancePair,
    classical_residual,
    solve_v2,
    strict_residual,
    swap,
    total_energy_residual,
)
from src.constants import default_constants
from src.errors import DomainError

CODATA = default_constants()

balance_pairs = st.builds(
    BalancePair,
    Z=st.integers(1, 10),
    r1=st.floats(0.05, 1.0),
    v1=st.floats(0.0, 0.02),
    r2=st.floats(0.05, 1.0),
    v2=st.floats(0.0, 0.02),
)


def test_identical_points_balance(constants):
    pair = BalancePair(Z=3, r1=0.2, v1=0.01, r2=0.2, v2=0.01)
    assert classical_residual(pair, constants) == 0.0
    assert strict_residual(pair, constants) == 0.0


def test_equal_speeds_leave_potential_difference(constants):
    pair = BalancePair(Z=2, r1=0.1, v1=0.01, r2=0.4, v2=0.01)
    expected = -2 * constants.alpha * constants.hc / (2 * math.pi) * (1 / 0.1 - 1 / 0.4)
    assert classical_residual(pair, constants) == pytest.approx(expected, rel=1e-14)
    assert classical_residual(pair, constants) != 0.0


def test_solved_speed_balances(constants):
    v2 = solve_v2(1, 0.5, 0.003, 0.1, constants)
    pair = BalancePair(Z=1, r1=0.5, v1=0.003, r2=0.1, v2=v2)
    assert abs(classical_residual(pair, constants)) < 1e-12


def test_solve_v2_trivial_cases(constants):
    assert solve_v2(1, 0.3, 0.01, 0.3, constants) == 0.01
    assert solve_v2(0, 0.3, 0.01, 5.0, constants) == 0.01


def test_falling_from_rest(constants):
    r1, r2 = 0.4, 0.1
    v2 = solve_v2(1, r1, 0.0, r2, constants)
    expected = math.sqrt(2 * constants.alpha * constants.hc / (2 * math.pi * constants.electron_rest_energy)
                         * (1 / r2 - 1 / r1))
    assert v2 == pytest.approx(expected, rel=1e-14)
    assert abs(classical_residual(BalancePair(Z=1, r1=r1, v1=0.0, r2=r2, v2=v2), constants)) < 1e-12


def test_classically_forbidden(constants):
    # climbing outward from rest needs negative kinetic energy
    with pytest.raises(DomainError, match="classically forbidden configuration"):
        solve_v2(1, 0.1, 0.0, 0.4, constants)


def test_invalid_radius():
    with pytest.raises(ValueError):
        BalancePair(Z=1, r1=0.0, v1=0.0, r2=0.1, v2=0.0)


def test_strict_residual_requires_positive_mass(constants):
    pair = BalancePair(Z=50, r1=1e-5, v1=0.0, r2=0.1, v2=0.0)
    with pytest.raises(DomainError, match="effective mass nonpositive"):
        strict_residual(pair, constants)


@hyp_settings(max_examples=1000, deadline=None)
@given(balance_pairs)
def test_strict_equals_classical(pair):
    assert strict_residual(pair, CODATA) == pytest.approx(classical_residual(pair, CODATA), abs=1e-12)


@hyp_settings(max_examples=300, deadline=None)
@given(balance_pairs)
def test_strict_equals_total_energy_form(pair):
    assert strict_residual(pair, CODATA) == pytest.approx(
        total_energy_residual(pair, CODATA), abs=1e-13 * CODATA.electron_rest_energy)


@hyp_settings(max_examples=300, deadline=None)
@given(balance_pairs)
def test_antisymmetry(pair):
    assert classical_residual(swap(pair), CODATA) == -classical_residual(pair, CODATA)
    assert strict_residual(swap(pair), CODATA) == pytest.approx(-strict_residual(pair, CODATA), abs=1e-12)


@hyp_settings(max_examples=300, deadline=None)
@given(st.integers(1, 10), st.floats(0.05, 1.0), st.floats(0.0, 0.02), st.floats(0.05, 1.0))
def test_solve_then_residual(Z, r1, v1, r2):
    try:
        v2 = solve_v2(Z, r1, v1, r2, CODATA)
    except DomainError:
        return
    pair = BalancePair(Z=Z, r1=r1, v1=v1, r2=r2, v2=v2)
    assert abs(classical_residual(pair, CODATA)) < 1e-12
