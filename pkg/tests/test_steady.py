import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.optimize import brentq

from loopbloch import oracle
from loopbloch.core import check_density_matrix, population_in, projector, superposition_14, superposition_23
from loopbloch.errors import NonUniqueSteadyState, NoSteadyState
from loopbloch.generator import apply, assemble
from loopbloch.scheme import SchemeConfig, SchemeKind, SymmetricParams
from loopbloch.steady import certify, solve, solve_generator
from reference import random_config

ODD_GRID = [(o, a) for o in (0.5, 2.0, 5.0) for a in (0.1, 1.0, 10.0)]


class TestSolve:
    def test_undriven_diamond_relaxes_to_ground(self):
        res = solve(SchemeConfig(gamma2=1, gamma3=2, gamma42=0.5, gamma43=0.5))
        np.testing.assert_allclose(res.rho, np.diag([1, 0, 0, 0]), atol=1e-15)

    def test_odd_phase_fractions(self, symmetric):
        c = solve(symmetric(2.0, 1.0), math.pi).components
        assert c.rho11 == pytest.approx(9 / 17, abs=1e-12)
        assert c.rho22 == pytest.approx(4 / 17, abs=1e-12)
        assert c.rho33 == pytest.approx(4 / 17, abs=1e-12)
        assert abs(c.rho44) < 1e-12

    @pytest.mark.parametrize("phi", [0.0, math.pi / 3, math.pi / 2, 2 * math.pi / 3])
    def test_matches_balanced_decay_closed_form(self, symmetric, phi):
        np.testing.assert_allclose(solve(symmetric(2.0, 1.0), phi).components.as_array(),
                                   oracle.analytic_alpha1(2.0, phi).components.as_array(), atol=1e-10)

    def test_default_phase_from_phase_law(self, symmetric):
        cfg = replace(symmetric(1.0, 1.0), dchi=0.4, dk=0.5, z=1.0)
        assert solve(cfg).phi == pytest.approx(-0.1)

    def test_random_configs_are_physical(self, rng):
        for kind in SchemeKind:
            for _ in range(40):
                cfg = random_config(rng, kind)
                res = solve(cfg, cfg.dchi)
                assert check_density_matrix(res.rho) == []
                assert res.residual < 1e-9
                assert res.unique and res.physical
                g = assemble(cfg, cfg.dchi) / cfg.reference_rate
                assert np.max(np.abs(apply(g, res.rho))) < 1e-9

    def test_result_is_read_only(self, symmetric):
        with pytest.raises(ValueError):
            solve(symmetric()).rho[0, 0] = 0


class TestErrors:
    def test_drifting_phase_has_no_steady_state(self, symmetric):
        with pytest.raises(NoSteadyState, match="dw"):
            solve(replace(symmetric(), dw=0.3))

    def test_closed_system_is_degenerate(self):
        cfg = SchemeConfig(g12=1, g13=1, g24=1, g34=1)
        with pytest.raises(NonUniqueSteadyState) as info:
            solve(cfg, 0.0)
        assert info.value.result.degenerate

    def test_degenerate_allowed(self):
        res = solve(SchemeConfig(g12=1, g13=1, g24=1, g34=1), 0.0, allow_degenerate=True)
        assert res.degenerate and res.method == "min-norm"
        assert np.trace(res.rho).real == pytest.approx(1.0)
        assert certify(res).startswith("degenerate")

    def test_zero_generator(self):
        res = solve_generator(np.zeros((16, 16)), allow_degenerate=True)
        np.testing.assert_allclose(res.rho, np.eye(4) / 4, atol=1e-15)


class TestCertify:
    def test_valid_result(self, symmetric):
        report = certify(solve(symmetric(2.0, 1.0), math.pi))
        assert report.startswith("unique, physical")
        for key in ("residual", "kernel gap", "min eigenval"):
            assert key in report


class TestOddPhase:
    @pytest.mark.parametrize("omega, alpha", ODD_GRID)
    def test_vanishing_elements(self, symmetric, omega, alpha):
        res = solve(symmetric(omega, alpha), math.pi)
        rho, c = res.rho, res.components
        for i, j in [(1, 3), (2, 3), (0, 3)]:
            assert abs(rho[i, j]) < 1e-10
        assert abs(rho[3, 3]) < 1e-10
        assert abs(c.u12) < 1e-10 and abs(c.v23) < 1e-10

    @pytest.mark.parametrize("omega", [0.5, 2.0, 5.0])
    def test_upper_decay_rate_drops_out(self, symmetric, omega):
        lo = solve(symmetric(omega, 0.1), math.pi).rho
        hi = solve(symmetric(omega, 10.0), math.pi).rho
        np.testing.assert_allclose(lo, hi, atol=1e-10)

    @pytest.mark.parametrize("omega", [0.1, 0.5, 1.0, 2.0, 5.0])
    def test_two_level_reduction(self, symmetric, omega):
        # resonant two-level atom with Rabi frequency sqrt(2) g and decay gamma
        rabi, gamma = math.sqrt(2) * omega, 1.0
        excited = (rabi**2 / 4) / (gamma**2 / 4 + rabi**2 / 2)
        c = solve(symmetric(omega, 0.7), math.pi).components
        assert c.rho22 + c.rho33 == pytest.approx(excited, abs=1e-12)
        assert excited == pytest.approx(2 * omega**2 / (1 + 4 * omega**2), abs=1e-15)


class TestRealPartsAtMultiplesOfPi:
    @pytest.mark.parametrize("n", [0, 1, 2, 3, -1])
    @pytest.mark.parametrize("omega, alpha", [(0.3, 0.1), (2.0, 1.0), (5.0, 10.0), (1.1, 3.0)])
    def test_one_photon_real_parts_vanish(self, symmetric, n, omega, alpha):
        c = solve(symmetric(omega, alpha), n * math.pi).components
        for name in ("u12", "u13", "u24", "u34t"):
            assert abs(getattr(c, name)) < 1e-10


class TestExtraZeros:
    @pytest.mark.parametrize("omega", [0.9, 1.0, 1.1, 1.2])
    def test_u12_root_location(self, symmetric, omega):
        s = 3 * (3 - 2 * omega**2) / (8 * omega**4)
        assert 0 < s < 1
        predicted = 2 * math.asin(math.sqrt(s))
        u12 = lambda p: solve(symmetric(omega, 1.0), p).components.u12  # noqa: E731
        # u12 also vanishes at 0 and pi, so keep the bracket strictly inside
        root = brentq(u12, 0.6 * predicted, predicted + 0.6 * (math.pi - predicted), xtol=1e-13)
        assert abs(root - predicted) < 1e-6

    def test_no_extra_zero_when_out_of_range(self, symmetric):
        # Omega = 2: the predicted sin^2 is negative, u12 keeps one sign on (0, pi)
        vals = [solve(symmetric(2.0, 1.0), p).components.u12 for p in np.linspace(0.05, math.pi - 0.05, 40)]
        assert all(v > 0 for v in vals) or all(v < 0 for v in vals)


class TestInversion:
    def test_intermediate_over_ground_at_large_alpha(self):
        cfg = SymmetricParams(omega=20.0, alpha=10.0).to_config()
        c = solve(cfg, 0.0).components
        assert c.rho22 > c.rho11

    def test_upper_over_intermediate_at_small_alpha(self, symmetric):
        c = solve(symmetric(2.0, 0.1), 0.0).components
        assert c.rho44 > c.rho22

    def test_no_inversion_at_odd_phase(self):
        c = solve(SymmetricParams(omega=20.0, alpha=10.0).to_config(), math.pi).components
        assert c.rho11 > c.rho22


class TestDoubleLambda:
    def test_dark_state_at_even_phase(self):
        cfg = SymmetricParams(2.0, 1.0).to_config(kind=SchemeKind.DOUBLE_LAMBDA)
        rho = solve(cfg, 0.0).rho
        assert population_in(rho, superposition_23(math.pi)) > 1 - 1e-9
        np.testing.assert_allclose(rho, projector(superposition_23(math.pi)), atol=1e-9)

    def test_no_dark_state_at_odd_phase(self):
        cfg = SymmetricParams(2.0, 1.0).to_config(kind=SchemeKind.DOUBLE_LAMBDA)
        assert population_in(solve(cfg, math.pi).rho, superposition_23(math.pi)) < 0.9

    def test_diamond_is_not_dark_at_even_phase(self, symmetric):
        assert population_in(solve(symmetric(2.0, 1.0), 0.0).rho, superposition_23(math.pi)) < 0.9


class TestTrapping:
    def test_small_alpha_two_photon_dark_state(self, symmetric):
        rho = solve(symmetric(2.0, 1e-3), 0.0).rho
        assert population_in(rho, superposition_14(math.pi)) > 0.98
        assert -0.5 <= rho[0, 3].real <= -0.49

    def test_large_alpha_at_fixed_drive_stays_bright(self, symmetric):
        # with g = 2 gamma the fast upper decay swamps the coupling; the closed form agrees
        c = solve(symmetric(2.0, 1e3), 0.0).components
        ref = oracle.analytic_phi_even(2.0, 1e3)
        np.testing.assert_allclose(c.as_array(), ref.as_array(), atol=1e-9)
        assert 0.5 * (c.rho22 + c.rho33) - c.u23 < 0.01

    @pytest.mark.parametrize("omega", [2000.0, 20000.0])
    def test_large_alpha_one_photon_dark_state_when_drive_matches_decay(self, omega):
        rho = solve(SymmetricParams(omega, 1e3).to_config(), 0.0).rho
        assert population_in(rho, superposition_23(math.pi)) > 0.99
