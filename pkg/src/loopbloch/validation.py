"""Numeric-versus-closed-form consistency checks behind ``loopbloch validate``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracle
from .core import BlochComponents
from .scheme import SymmetricParams
from .steady import solve

DEFAULT_OMEGAS = (0.2, 1.0, 2.0, 5.0)
DEFAULT_PHIS = tuple(2 * math.pi * k / 40 for k in range(40))
DEFAULT_ALPHAS = tuple(np.geomspace(1e-3, 1e3, 20).tolist())


@dataclass
class Check:
    name: str
    max_error: float
    tolerance: float
    points: int

    @property
    def passed(self) -> bool:
        return bool(self.max_error < self.tolerance)

    def as_dict(self):
        return {**asdict(self), "passed": self.passed}


def _diff(a: BlochComponents, b: BlochComponents) -> float:
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def _numeric(omega, alpha, phi):
    return solve(SymmetricParams(omega, alpha, phi).to_config(), phi).components


def run_validation(omegas=DEFAULT_OMEGAS, phis=DEFAULT_PHIS, alphas=DEFAULT_ALPHAS) -> list[Check]:
    """Run every oracle-equivalence check on the given grids."""
    checks = []

    errs = [_diff(_numeric(w, 1.0, p), oracle.analytic_alpha1(w, p).components) for w in omegas for p in phis]
    checks.append(Check("solver-vs-alpha1-family", max(errs), 1e-9, len(errs)))

    errs = [_diff(_numeric(w, a, math.pi), oracle.analytic_phi_odd(w).components) for w in omegas for a in alphas]
    checks.append(Check("solver-vs-odd-phase-family", max(errs), 1e-10, len(errs)))

    errs = [_diff(_numeric(w, a, 0.0), oracle.analytic_phi_even(w, a).components) for w in omegas for a in alphas]
    checks.append(Check("solver-vs-even-phase-family", max(errs), 1e-9, len(errs)))

    cross = []
    for w in omegas:
        cross.append(_diff(oracle.analytic_alpha1(w, math.pi).components, oracle.analytic_phi_odd(w).components))
        cross.append(_diff(oracle.analytic_alpha1(w, 0.0).components, oracle.analytic_phi_even(w, 1.0).components))
    checks.append(Check("cross-family-consistency", max(cross), 1e-12, len(cross)))

    sums = [abs(oracle.analytic_alpha1(w, p).population_sum - 1) for w in omegas for p in phis]
    sums += [abs(oracle.analytic_phi_even(w, a).population_sum - 1) for w in omegas for a in alphas]
    sums += [abs(oracle.analytic_phi_odd(w).population_sum - 1) for w in omegas]
    checks.append(Check("closed-form-population-sum", max(sums), 1e-12, len(sums)))

    r44 = [abs(_numeric(w, a, math.pi).rho44) for w in omegas for a in alphas]
    checks.append(Check("upper-level-empty-at-odd-phase", max(r44), 1e-10, len(r44)))

    sym = []
    for w in omegas:
        for a in (0.1, 1.0, 10.0):
            for p in phis[::4]:
                c = _numeric(w, a, p)
                sym += [abs(c.u12 + c.u13), abs(c.v12 - c.v13), abs(c.u24 + c.u34t), abs(c.v24 - c.v34t),
                        abs(c.rho22 - c.rho33)]
    checks.append(Check("exchange-symmetry", max(sym), 1e-10, len(sym)))
    return checks


def report(checks: list[Check]) -> dict:
    return {"passed": all(c.passed for c in checks), "checks": [c.as_dict() for c in checks]}
