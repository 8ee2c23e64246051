import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from podolsky.constants import CODATA2018, Length
from podolsky.errors import DomainError
from podolsky.hydrogen import (HydrogenModel, bound_a, energy, energy_derivative,
                               energy_quadrature, minimize, negative_branch_energy,
                               normalization_integral, stationarity_quartic,
                               stationarity_roots, to_ev, truncated_roots)

UNIT = HydrogenModel(1.0, 1.0, 0.01)


def test_energy_coulomb_limit():
    m = HydrogenModel(1.0, 1.0, 1e-12)
    assert energy(m, 1.0) == pytest.approx(-0.5, rel=1e-12)


def test_energy_podolsky_term_arithmetic():
    m = HydrogenModel(1.0, 1.0, 1.0)
    # gamma = 1/2: 1/8 - 1/2 + 4 (1/8) / 4
    assert energy(m, 0.5) == pytest.approx(0.125 - 0.5 + 0.125, rel=1e-15)


def test_energy_domain():
    with pytest.raises(DomainError):
        energy(UNIT, 0.0)
    with pytest.raises(DomainError):
        energy_quadrature(UNIT, -1.0)
    with pytest.raises(DomainError):
        HydrogenModel(1.0, 1.0, 0.0)


def test_energy_matches_quadrature():
    assert energy_quadrature(UNIT, 1.0) == pytest.approx(energy(UNIT, 1.0), rel=1e-8)


def test_quadrature_coulomb_limit():
    m = HydrogenModel(1.0, 1.0, 1e-12)
    gamma = 0.7
    assert energy_quadrature(m, gamma) == pytest.approx(gamma**2 / 2 - gamma, rel=1e-8)


@pytest.mark.parametrize("gamma", [1e-3, 0.5, 1.0, 40.0])
def test_normalization(gamma):
    assert normalization_integral(gamma) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-6, max_value=0), st.floats(min_value=-2, max_value=1))
def test_derivative_consistency(log_a, log_g):
    m = HydrogenModel(1.0, 1.0, 10**log_a)
    g = 10**log_g
    h = 1e-5 * g
    fd = (energy(m, g + h) - energy(m, g - h)) / (2 * h)
    analytic = energy_derivative(m, g)
    assert fd == pytest.approx(analytic, rel=1e-6, abs=1e-9 * (g / m.m + m.e2))


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=-8, max_value=-1))
def test_quartic_identity(log_a):
    m = HydrogenModel(0.511, 1 / 137.0, 10**log_a * 268.0)
    rng = np.random.default_rng(int(-log_a * 1000))
    for gamma in rng.uniform(1e-4, 0.02, 20):
        lhs = stationarity_quartic(m, gamma) * m.m
        rhs = energy_derivative(m, gamma) * (2 * m.a * gamma + 1) ** 3 * m.m
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-14 * m.m * m.e2)


def test_positive_root_near_coulomb():
    m = HydrogenModel.physical(1e-8 * 268.17)
    positive = [g for g in stationarity_roots(m) if g > 0]
    assert len(positive) == 1
    assert positive[0] == pytest.approx(m.m * m.e2, rel=1e-6)


def test_truncated_roots():
    m = HydrogenModel.physical(1e-4 * 268.17)
    plus, minus = truncated_roots(m)
    assert plus == m.m * m.e2 and minus == -1 / (6 * m.a)
    h = m.reduced_a
    for g in (plus / (m.m * m.e2), minus / (m.m * m.e2)):
        assert 6 * h * g**2 + (1 - 6 * h) * g - 1 == pytest.approx(0.0, abs=1e-9)


def test_full_quartic_negative_root_location():
    # h * quartic = u (2u + 1)^3 - h (6u + 1), u = g h; real root u ~ -1/2 + (4h)^(1/3)/2
    m = HydrogenModel.physical(1e-6 * 268.17)
    h = m.reduced_a
    negative = [g for g in stationarity_roots(m) if g < 0]
    assert len(negative) == 1
    u = negative[0] * m.a
    assert u == pytest.approx(-0.5 + 0.5 * (4 * h) ** (1 / 3), rel=1e-3)


def test_minimize_perturbative():
    m = HydrogenModel.physical(1e-4 * 268.17)
    res = minimize(m)
    h = m.reduced_a
    assert res.gamma_star == pytest.approx(m.m * m.e2, rel=1e-6)
    assert res.gamma_bracket == pytest.approx(res.gamma_star, rel=1e-10)
    assert res.residual <= 1e-12
    assert abs(res.E_star - res.perturbative_E) <= 20 * h**3 * m.m * m.e2**2
    assert res.perturbative_E == pytest.approx(m.coulomb_energy * (1 - 8 * h * h), rel=1e-15)


def test_coulomb_ground_state_ev():
    res = minimize(HydrogenModel.physical(Length(1e-6, "fm")))
    assert to_ev(res.E_star) == pytest.approx(-13.6057, abs=1e-4)


def test_negative_branch_formula_is_literal_energy():
    m = HydrogenModel(0.511, 1 / 137.0, 3.7)
    from podolsky.hydrogen import _energy_formula
    literal = _energy_formula(m.m, m.e2, m.a, -1 / (6 * m.a))
    assert negative_branch_energy(m) == pytest.approx(literal, rel=1e-13)
    assert negative_branch_energy(m) > 0


def test_energy_above_coulomb_and_monotone():
    a_values = np.logspace(-6, -1, 20) * 268.17
    e_stars = [minimize(HydrogenModel.physical(a), check=False).E_star for a in a_values]
    coulomb = HydrogenModel.physical(1.0).coulomb_energy
    assert all(e >= coulomb for e in e_stars)
    assert np.all(np.diff(e_stars) > 0)


def test_minimizer_selects_least_positive_energy():
    res = minimize(HydrogenModel.physical(0.05 * 268.17))
    positive = [g for g in res.roots if g > 0]
    assert res.gamma_star in positive
    assert all(energy(res.model, res.gamma_star) <= energy(res.model, g) for g in positive)
    for g in np.linspace(0.9, 1.1, 21) * res.gamma_star:
        assert res.E_star <= energy(res.model, g)


def test_bound_reproduces_reference_value():
    b = bound_a(8.83e-8)
    assert b.a_max == pytest.approx(5.56, rel=5e-3)
    assert b.mass_min == pytest.approx(35.51, rel=5e-3)


def test_bound_unit_case_and_scaling():
    assert bound_a(2.0).a_max == pytest.approx(CODATA2018.bohr_radius_fm / 2, rel=1e-15)
    assert bound_a(4e-8).a_max == pytest.approx(2 * bound_a(1e-8).a_max, rel=1e-15)


def test_bound_domain():
    with pytest.raises(DomainError):
        bound_a(0.0)


def test_bound_is_where_shift_equals_sigma():
    b = bound_a(1e-7)
    m = HydrogenModel.physical(Length(b.a_max, "fm"))
    assert 2 * (2 * m.m * m.a * m.e2) ** 2 == pytest.approx(1e-7, rel=1e-6)
