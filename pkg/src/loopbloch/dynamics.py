"""
Time evolution of the master equation.

The 16-component vectorized density matrix is integrated with an embedded
explicit Runge-Kutta pair (Dormand-Prince 8(5,3) from scipy by default).
With ``dw == 0`` the generator is constant and assembled once. Otherwise the
phase-split form ``G0 + e^{i phi(t)} Gp + e^{-i phi(t)} Gm`` is used, so no
re-assembly happens inside the right-hand side.

Output states are taken from the integrator's dense interpolant at the
requested sample times, so the step sequence does not depend on the sampling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp

from .core import DIM, basis_state, projector
from .errors import IntegrationError
from .generator import assemble, phase_decomposition, unvec, vec
from .scheme import SchemeConfig, phase_at

log = logging.getLogger(__name__)

TRACE_DRIFT_LIMIT = 1e-8


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: ``states[k]`` is rho at ``times[k]`` with loop phase ``phase_trace[k]``."""

    times: NDArray[np.float64]
    states: NDArray[np.complex128]  # shape (n, 4, 4)
    phase_trace: NDArray[np.float64]
    n_rhs_evals: int = 0

    @property
    def final(self) -> NDArray[np.complex128]:
        return self.states[-1]

    @property
    def trace_drift(self) -> float:
        tr = np.trace(self.states, axis1=1, axis2=2)
        return float(np.max(np.abs(tr - 1.0)))

    def populations(self) -> NDArray[np.float64]:
        return np.real(np.diagonal(self.states, axis1=1, axis2=2))


def distance_to(rho: ArrayLike, sigma: ArrayLike) -> float:
    """Largest entrywise modulus of ``rho - sigma``."""
    return float(np.max(np.abs(np.asarray(rho) - np.asarray(sigma))))


def evolve(rho0: ArrayLike | None, config: SchemeConfig, t_end: float, tol: float = 1e-8, *,
           t_eval: ArrayLike | None = None, n_samples: int = 201, z: float | None = None,
           method: str = "DOP853") -> Trajectory:
    """Integrate the master equation from ``rho0`` over ``[0, t_end]``.

    Parameters
    ----------
    rho0 : array_like or None
        Initial density matrix; ``None`` means |1><1|.
    config : SchemeConfig
        The loop phase follows ``phase_at(config, t, z)``.
    t_end : float
        Final time, in inverse units of the config's rates.
    tol : float
        Absolute and relative local error target per step, in [1e-12, 1e-4].
    t_eval : array_like, optional
        Sample times; default is ``n_samples`` equispaced points including 0 and ``t_end``.
    z : float, optional
        Position for the phase law; defaults to ``config.z``.

    Raises
    ------
    IntegrationError
        If the step size underflows; carries the last time reached.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    rho0 = projector(basis_state(1)) if rho0 is None else np.asarray(rho0, dtype=complex)
    if rho0.shape != (DIM, DIM):
        raise ValueError(f"rho0 must be 4x4, got {rho0.shape}")
    z = config.z if z is None else z
    if t_eval is None:
        t_eval = np.linspace(0.0, t_end, n_samples)
    t_eval = np.asarray(t_eval, dtype=float)
    if np.any(np.diff(t_eval) <= 0):
        raise ValueError("sample times must be strictly increasing")

    if config.dw == 0:
        gen = np.asarray(assemble(config, phase_at(config, 0.0, z)))

        def rhs(t, y):
            return gen @ y
    else:
        g0, gp, gm = phase_decomposition(config)

        def rhs(t, y):
            e = np.exp(1j * phase_at(config, t, z))
            return g0 @ y + e * (gp @ y) + e.conjugate() * (gm @ y)

    sol = solve_ivp(rhs, (0.0, t_end), vec(rho0), method=method, t_eval=t_eval,
                    rtol=tol, atol=tol)
    if sol.status != 0:
        reached = float(sol.t[-1]) if sol.t.size else 0.0
        raise IntegrationError(sol.message, reached)
    states = np.stack([unvec(sol.y[:, k]) for k in range(sol.y.shape[1])])
    phases = np.array([phase_at(config, t, z) for t in sol.t])
    traj = Trajectory(times=sol.t, states=states, phase_trace=phases, n_rhs_evals=int(sol.nfev))
    if traj.trace_drift > TRACE_DRIFT_LIMIT:
        log.warning("trace drifted by %.3g over the run", traj.trace_drift)
    return traj
