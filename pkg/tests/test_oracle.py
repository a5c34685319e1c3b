import cmath
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from loopbloch import oracle
from loopbloch.errors import PoleAtZero
from loopbloch.oracle import (
    _alpha1_terms,
    _phi_even_terms,
    _phi_odd_terms,
    analytic_alpha1,
    analytic_phi_even,
    analytic_phi_odd,
    two_photon_probability,
)
from loopbloch.scheme import SchemeConfig
from loopbloch.validation import Check, run_validation

W, a, s, q = sp.symbols("W a s q", positive=True)
KEYS = ("rho11", "rho22", "rho44", "u12", "v12", "u24", "v24", "u14", "v14", "u23", "v23")


def _zero(expr):
    return sp.cancel(sp.together(expr)) == 0


class TestSymbolic:
    def test_balanced_family_at_odd_phase(self):
        t = _alpha1_terms(W, sp.Integer(1), sp.Integer(0), sp.Integer(0))
        odd = _phi_odd_terms(W)
        assert _zero(t["rho11"] - (1 + 2 * W**2) / (1 + 4 * W**2))
        for k in KEYS:
            assert _zero(t[k] - odd[k]), k

    def test_balanced_family_at_even_phase(self):
        t = _alpha1_terms(W, sp.Integer(0), sp.Integer(0), sp.Integer(1))
        even = _phi_even_terms(W, sp.Integer(1))
        for k in KEYS:
            assert _zero(t[k] - even[k]), k

    def test_two_level_identity(self):
        odd = _phi_odd_terms(W)
        rabi = sp.sqrt(2) * W
        excited = (rabi**2 / 4) / (sp.Rational(1, 4) + rabi**2 / 2)
        assert _zero(2 * odd["rho22"] - excited)
        assert _zero(excited - 2 * W**2 / (1 + 4 * W**2))

    def test_balanced_family_population_sum(self):
        t = _alpha1_terms(W, s, q, 1 - s)
        total = (t["rho11"] + 2 * t["rho22"] + t["rho44"]).subs(q**2, 4 * s * (1 - s))
        assert _zero(total - 1)

    def test_even_family_population_sum(self):
        t = _phi_even_terms(W, a)
        assert _zero(t["rho11"] + 2 * t["rho22"] + t["rho44"] - 1)

    def test_odd_family_population_sum(self):
        t = _phi_odd_terms(W)
        assert _zero(t["rho11"] + 2 * t["rho22"] + t["rho44"] - 1)

    def test_shared_bracket(self):
        t = _phi_even_terms(W, a)
        assert _zero(t["u23"] + a * t["u14"])


class TestAlpha1:
    @pytest.mark.parametrize("omega", [0.0, 0.3, 2.0, 17.0])
    def test_upper_level_empty_at_pi(self, omega):
        assert analytic_alpha1(omega, math.pi).rho44 == pytest.approx(0.0, abs=1e-15)

    def test_odd_fraction(self):
        assert analytic_alpha1(2.0, math.pi).rho11 == pytest.approx(9 / 17, abs=1e-14)

    def test_undriven_limit(self):
        out = analytic_alpha1(1e-9, 1.234)
        assert out.rho11 == pytest.approx(1.0, abs=1e-15)
        assert np.max(np.abs(out.components.as_array()[1:])) < 1e-8

    def test_upper_population_closed_form(self):
        omega, phi = 1.3, 0.8
        out = analytic_alpha1(omega, phi)
        sh = math.sin(phi / 2) ** 2
        expected = (omega**4 / out.denominator) * math.cos(phi / 2) ** 2 * (
            1 + 4 / 3 * omega**2 + 8 / 9 * omega**4 * sh)
        assert out.rho44 == pytest.approx(expected, rel=1e-14)

    def test_denominator(self):
        assert analytic_alpha1(1.0, 0.0).denominator == pytest.approx(1 + 22 / 3 + 4 / 9 * 27 + 16 / 9 * 3)

    def test_rejects_negative_omega(self):
        with pytest.raises(ValueError):
            analytic_alpha1(-1.0, 0.0)


class TestPhiOdd:
    def test_printed_fractions(self):
        out = analytic_phi_odd(2.0)
        assert out.rho11 == pytest.approx(9 / 17)
        assert out.rho22 == out.rho33 == pytest.approx(4 / 17)
        assert out.v12 == pytest.approx(2 / 17)
        assert out.u23 == pytest.approx(4 / 17)

    def test_strong_drive(self):
        out = analytic_phi_odd(1e4)
        assert out.rho11 == pytest.approx(0.5, abs=1e-8)
        assert out.rho22 == pytest.approx(0.25, abs=1e-8)

    def test_undriven(self):
        assert analytic_phi_odd(0.0).rho11 == 1.0

    def test_zero_set(self):
        c = analytic_phi_odd(1.7).components
        for k in ("rho44", "u12", "u13", "u24", "v24", "u34t", "v34t", "u14", "v14", "v23"):
            assert getattr(c, k) == 0


class TestPhiEven:
    def test_small_alpha_limit(self):
        out = analytic_phi_even(2.0, 1e-7)
        assert out.rho22 < 1e-6 and out.rho33 < 1e-6
        assert out.u14 == pytest.approx(-0.5, abs=1e-6)

    def test_balanced_decay(self):
        np.testing.assert_allclose(analytic_phi_even(2.0, 1.0).components.as_array(),
                                   analytic_alpha1(2.0, 0.0).components.as_array(), atol=1e-12)

    @given(st.floats(0, 30), st.floats(1e-3, 1e3))
    def test_shared_bracket_numerically(self, omega, alpha):
        out = analytic_phi_even(omega, alpha)
        assert out.u23 == pytest.approx(-alpha * out.u14, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("alpha", [0.0, -1.0, math.inf])
    def test_rejects_bad_alpha(self, alpha):
        with pytest.raises(ValueError):
            analytic_phi_even(1.0, alpha)


class TestConsistency:
    @pytest.mark.parametrize("omega", np.geomspace(1e-2, 1e2, 20))
    def test_cross_family(self, omega):
        np.testing.assert_allclose(analytic_alpha1(omega, math.pi).components.as_array(),
                                   analytic_phi_odd(omega).components.as_array(), atol=1e-12)
        np.testing.assert_allclose(analytic_alpha1(omega, 0.0).components.as_array(),
                                   analytic_phi_even(omega, 1.0).components.as_array(), atol=1e-12)

    @settings(max_examples=200)
    @given(st.floats(0, 20), st.floats(1e-3, 1e3), st.floats(0, 2 * math.pi))
    def test_population_sums(self, omega, alpha, phi):
        assert abs(analytic_alpha1(omega, phi).population_sum - 1) < 1e-12
        assert abs(analytic_phi_even(omega, alpha).population_sum - 1) < 1e-12
        assert abs(analytic_phi_odd(omega).population_sum - 1) < 1e-12


class TestTwoPhoton:
    def test_destructive_at_pi(self, symmetric):
        assert two_photon_probability(symmetric(0.7, 1.0), math.pi) == pytest.approx(0.0, abs=1e-25)

    @pytest.mark.parametrize("phi", np.linspace(0, 2 * math.pi, 11))
    def test_cos_squared(self, symmetric, phi):
        cfg = symmetric(0.7, 1.0)
        ratio = two_photon_probability(cfg, phi) / two_photon_probability(cfg, 0.0)
        assert ratio == pytest.approx(math.cos(phi / 2) ** 2, abs=1e-14)

    def test_quarter_ratio(self, symmetric):
        cfg = symmetric(0.7, 1.0)
        assert two_photon_probability(cfg, math.pi / 2) / two_photon_probability(cfg, 0.0) == pytest.approx(0.5)

    def test_asymmetric_detunings(self):
        cfg = SchemeConfig(g12=0.3, g13=0.5, g24=0.7, g34=1.1, gamma2=0.8, gamma3=1.4,
                           delta2=0.4, delta3=-0.7, gamma42=1, gamma43=1)
        phi = 0.9
        p1 = (0.3 * 0.7) / complex(0.4, -0.4)
        p2 = (0.5 * 1.1) * cmath.exp(1j * phi) / complex(-0.7, -0.7)
        assert two_photon_probability(cfg, phi) == pytest.approx(abs(p1 + p2) ** 2, rel=1e-14)

    def test_pole(self):
        with pytest.raises(PoleAtZero):
            two_photon_probability(SchemeConfig(g12=1, g24=1), 0.0)

    def test_uncoupled_path_ignores_pole(self):
        cfg = SchemeConfig(g12=1, g24=1, gamma2=1)
        assert two_photon_probability(cfg, 0.0) == pytest.approx(4.0)


class TestValidation:
    def test_default_grids_pass(self):
        checks = run_validation()
        assert all(c.passed for c in checks), [c.as_dict() for c in checks if not c.passed]
        assert {c.name for c in checks} >= {"solver-vs-alpha1-family", "cross-family-consistency"}

    def test_perturbed_oracle_fails_named_check(self, monkeypatch):
        real = oracle.analytic_alpha1

        def perturbed(omega, phi):
            out = real(omega, phi)
            comps = out.components.__class__(**{**out.components.as_dict(), "rho11": out.rho11 * (1 + 1e-6)},
                                             phi=phi)
            return oracle.OracleOutput(comps, out.denominator)

        monkeypatch.setattr(oracle, "analytic_alpha1", perturbed)
        failed = [c.name for c in run_validation(omegas=(1.0, 2.0)) if not c.passed]
        assert "solver-vs-alpha1-family" in failed

    def test_check_dict(self):
        c = Check("x", 1e-3, 1e-6, 4)
        assert c.as_dict() == {"name": "x", "max_error": 1e-3, "tolerance": 1e-6, "points": 4, "passed": False}
