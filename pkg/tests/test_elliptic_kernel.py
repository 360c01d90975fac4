"""
Tests for the q-product kernel: products, E(z, q), theta_4 and truncation.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dilute_spectra.elliptic_kernel import (
    Truncation,
    elliptic_E,
    log_elliptic_E,
    log_elliptic_E_power,
    qpoch1,
    qpoch1_detailed,
    qpoch2,
    theta4,
)
from dilute_spectra.exceptions import DomainError, TruncationAccuracyWarning, TruncationError

TOL = 1e-11

moduli = st.floats(min_value=0.1, max_value=2.0)
angles = st.floats(min_value=-math.pi, max_value=math.pi)
nomes = st.floats(min_value=0.01, max_value=0.9)


def _point(r, phi):
    return r * cmath.exp(1j * phi)


def _euler_series(q, terms=60):
    """Pentagonal number series for (q; q)."""
    total = 0.0
    for k in range(-terms, terms + 1):
        total += (-1) ** k * q ** (k * (3 * k - 1) // 2)
    return total


def _triple_series(z, q, terms=80):
    return sum((-1) ** n * q ** (n * (n - 1) // 2) * z ** n for n in range(-terms, terms + 1))


def _theta4_series(u, q, terms=60):
    return 1.0 + 2.0 * sum((-1) ** n * q ** (n * n) * math.cos(2 * n * u) for n in range(1, terms))


class TestQPoch1:

    def test_zero_nome_is_single_factor(self):
        assert qpoch1(0.5, 0.0) == pytest.approx(0.5)

    def test_zero_argument_is_one(self):
        assert qpoch1(0.0, 0.3) == pytest.approx(1.0)

    @pytest.mark.parametrize("q", [0.1, 0.3, 0.6, 0.9])
    def test_euler_pentagonal_series(self, q):
        assert abs(qpoch1(q, q) - _euler_series(q)) < TOL

    @given(moduli, angles, nomes)
    @settings(max_examples=60, deadline=None)
    def test_shift_identity(self, r, phi, q):
        z = _point(r, phi)
        lhs = qpoch1(z, q) / qpoch1(z * q, q)
        assert abs(lhs - (1 - z)) < 10 * TOL * max(1.0, abs(1 - z))

    def test_vectorises_and_keeps_shape(self):
        z = np.array([[0.1, 0.2], [0.3, -0.4]])
        values = qpoch1(z, 0.2)
        assert values.shape == (2, 2)
        assert values[1, 0] == pytest.approx(qpoch1(0.3, 0.2))

    def test_detailed_reports_terms(self):
        result = qpoch1_detailed(0.5, 0.5)
        assert result.converged
        assert result.terms > 10
        assert result.value == pytest.approx(qpoch1(0.5, 0.5))

    @pytest.mark.parametrize("q", [1.0, 1.5, -1.0])
    def test_nome_outside_disc_rejected(self, q):
        with pytest.raises(DomainError):
            qpoch1(0.5, q)

    def test_non_finite_argument_rejected(self):
        with pytest.raises(DomainError):
            qpoch1(float("nan"), 0.3)

    def test_large_nome_needs_override(self):
        with pytest.raises(DomainError):
            qpoch1(0.5, 0.99)
        value = qpoch1(0.5, 0.99, Truncation(allow_large_nome=True))
        assert np.isfinite(value)


class TestQPoch2:

    def test_collapses_when_second_nome_vanishes(self):
        assert qpoch2(0.3, 0.4, 0.0) == pytest.approx(qpoch1(0.3, 0.4), abs=TOL)

    def test_shift_in_first_nome(self):
        z, p, q = 0.1, 0.2, 0.3
        assert abs(qpoch2(z, p, q) / qpoch2(z * p, p, q) - qpoch1(z, q)) < TOL

    def test_shift_across_nomes(self):
        z, p, q = 0.1, 0.2, 0.3
        lhs = qpoch2(z * q / p, p, q) / qpoch2(z, p, q)
        rhs = qpoch1(z * q / p, q) / qpoch1(z, p)
        assert abs(lhs - rhs) < TOL

    @given(moduli, angles, st.floats(min_value=0.05, max_value=0.6), st.floats(min_value=0.05, max_value=0.6))
    @settings(max_examples=30, deadline=None)
    def test_symmetric_in_nomes(self, r, phi, p, q):
        z = _point(r, phi)
        assert abs(qpoch2(z, p, q) - qpoch2(z, q, p)) < 10 * TOL * max(1.0, abs(qpoch2(z, p, q)))


class TestEllipticE:

    def test_zero_nome(self):
        assert elliptic_E(0.3 + 0.2j, 0.0) == pytest.approx(1 - (0.3 + 0.2j))

    def test_zero_argument_is_a_pole(self):
        with pytest.raises(DomainError):
            elliptic_E(0.0, 0.3)

    @given(moduli, angles, st.floats(min_value=0.05, max_value=0.7))
    @settings(max_examples=60, deadline=None)
    def test_triple_product_series(self, r, phi, q):
        z = _point(r, phi)
        series = _triple_series(z, q)
        assert abs(elliptic_E(z, q) - series) < 1e-10 * max(1.0, abs(series))

    @given(moduli, angles, nomes)
    @settings(max_examples=60, deadline=None)
    def test_inversion_symmetry(self, r, phi, q):
        z = _point(r, phi)
        value = elliptic_E(z, q)
        assert abs(elliptic_E(q / z, q) - value) < 10 * TOL * max(1.0, abs(value))

    @given(moduli, angles, st.floats(min_value=0.05, max_value=0.8))
    @settings(max_examples=60, deadline=None)
    def test_quasi_periodicity(self, r, phi, q):
        z = _point(r, phi)
        expected = -elliptic_E(z, q) / z
        assert abs(elliptic_E(q * z, q) - expected) < 10 * TOL * max(1.0, abs(expected))

    def test_log_form_exponentiates_back(self):
        z = np.array([0.3 + 0.1j, -0.7, 1.5j])
        assert np.allclose(np.exp(log_elliptic_E(z, 0.2)), elliptic_E(z, 0.2), rtol=1e-12)


class TestLogEllipticPower:

    @pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
    def test_matches_direct_evaluation(self, x):
        exponents = np.array([-9.0, -2.5, 0.0, 4.0, 13.0])
        direct = [math.log(elliptic_E(-(x ** c), x ** 24).real) for c in exponents]
        logged = log_elliptic_E_power(exponents, math.log(x), 24)
        assert np.allclose(logged, direct, rtol=1e-12, atol=1e-12)

    def test_scalar_in_scalar_out(self):
        value = log_elliptic_E_power(3.0, math.log(0.4), 10)
        assert isinstance(value, float)

    def test_underflowing_conjugate_nome(self):
        # x = e^{-5000} is 0.0 in floating point
        log_x = -5000.0
        assert log_elliptic_E_power(-6.0, log_x, 72) == pytest.approx(-6.0 * log_x)
        assert log_elliptic_E_power(6.0, log_x, 72) == 0.0

    def test_rejects_non_negative_log(self):
        with pytest.raises(DomainError):
            log_elliptic_E_power(1.0, 0.0, 10)
        with pytest.raises(DomainError):
            log_elliptic_E_power(1.0, -0.1, 0)


class TestTheta4:

    def test_zero_nome_is_one(self):
        assert theta4(0.7, 0.0) == 1.0

    @pytest.mark.parametrize("q", [0.05, 0.1, 0.4, 0.8])
    @pytest.mark.parametrize("u", [0.0, math.pi / 4, 1.1])
    def test_fourier_series(self, u, q):
        assert theta4(u, q) == pytest.approx(_theta4_series(u, q), abs=1e-12)

    def test_period_pi(self):
        u = np.linspace(-1.0, 1.0, 9)
        assert np.allclose(theta4(u + math.pi, 0.3), theta4(u, 0.3), atol=1e-13)

    def test_returns_float_for_scalar(self):
        assert isinstance(theta4(math.pi / 4, 0.1), float)

    @pytest.mark.parametrize("q", [1.0, -0.1, float("inf")])
    def test_bad_nome(self, q):
        with pytest.raises(DomainError):
            theta4(0.3, q)


class TestTruncation:

    def test_defaults(self):
        tr = Truncation()
        assert tr.tol == 1e-13
        assert tr.max_terms == 1_000_000

    def test_rejects_invalid_policy(self):
        with pytest.raises(ValueError):
            Truncation(tol=0.0)
        with pytest.raises(ValueError):
            Truncation(max_terms=0)

    def test_presets(self):
        assert Truncation.from_settings(preset="fast").tol == 1e-10
        with pytest.raises(DomainError):
            Truncation.from_settings(preset="bogus")

    def test_cap_warns(self):
        with pytest.warns(TruncationAccuracyWarning):
            qpoch1(0.5, 0.5, Truncation(max_terms=3))

    def test_cap_raises_in_strict_mode(self):
        with pytest.raises(TruncationError):
            qpoch1(0.5, 0.5, Truncation(max_terms=3, strict=True))

    @given(moduli, angles, nomes)
    @settings(max_examples=40, deadline=None)
    def test_halving_tol_is_stable(self, r, phi, q):
        z = _point(r, phi)
        tr = Truncation(tol=1e-9)
        assert abs(qpoch1(z, q, tr) - qpoch1(z, q, tr.halved())) < 1e-8 * max(1.0, abs(qpoch1(z, q, tr)))
