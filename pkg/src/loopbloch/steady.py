"""
Stationary states of the generator: G vec(rho) = 0 with tr rho = 1.

The generator is first divided by ``config.reference_rate`` so that its
entries are O(1). The (1,1) population-balance row is then replaced by the
trace row and the bordered 16x16 system is solved by LU. If that system is
ill-conditioned the kernel is taken from a full SVD instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .core import DIM, BlochComponents, bloch_components
from .errors import NonUniqueSteadyState, NoSteadyState
from .generator import assemble, trace_row, unvec, vec
from .scheme import SchemeConfig, phase_at, steady_state_exists

log = logging.getLogger(__name__)

GAP_THRESHOLD = 1e-8
COND_LIMIT = 1e12
EIG_CLIP = 1e-9
RESIDUAL_LIMIT = 1e-9


@dataclass(frozen=True)
class SteadyStateResult:
    """Stationary density matrix plus the diagnostics used to certify it.

    ``residual`` is ``max|G vec(rho)|`` with G in units of the reference rate;
    ``kernel_gap`` is the second-smallest singular value of G divided by the
    largest. ``method`` is ``"lu"``, ``"svd"`` or ``"min-norm"`` (degenerate).
    """

    rho: NDArray[np.complex128]
    phi: float
    residual: float
    kernel_gap: float
    min_eigenvalue: float
    clipped: bool
    degenerate: bool
    method: str
    config: SchemeConfig | None = field(default=None, repr=False, compare=False)

    @property
    def physical(self) -> bool:
        return self.min_eigenvalue >= -EIG_CLIP and abs(np.trace(self.rho) - 1) < 1e-10

    @property
    def unique(self) -> bool:
        return not self.degenerate

    @property
    def components(self) -> BlochComponents:
        return bloch_components(self.rho, self.phi)


def _hermitize(rho):
    return 0.5 * (rho + rho.conj().T)


def _min_norm_trace_one(vh: NDArray, kernel_dim: int) -> NDArray:
    # orthonormal kernel basis K; minimise |K c| subject to t.K c = 1
    kernel = vh[-kernel_dim:].conj().T
    t = trace_row() @ kernel
    if np.linalg.norm(t) == 0:
        raise NonUniqueSteadyState("numerical kernel contains no trace-carrying state")
    c = t.conj() / np.vdot(t, t).real
    return kernel @ c


def _clip_negative(rho):
    w, v = np.linalg.eigh(rho)
    if w[0] >= 0:
        return rho, float(w[0]), False
    if w[0] < -EIG_CLIP:
        return rho, float(w[0]), False
    w = np.clip(w, 0.0, None)
    rho = (v * w) @ v.conj().T
    return rho / np.trace(rho).real, float(np.linalg.eigvalsh(rho)[0]), True


def solve_generator(generator: NDArray, phi: float = 0.0, *, scale: float = 1.0,
                    allow_degenerate: bool = False, config=None) -> SteadyStateResult:
    """Stationary state of an arbitrary 16x16 generator."""
    g = np.asarray(generator, dtype=complex) / scale
    s = np.linalg.svd(g, compute_uv=False)
    smax = s[0]
    gap = float(s[-2] / smax) if smax > 0 else 0.0
    degenerate = gap <= GAP_THRESHOLD

    if degenerate:
        _, s_full, vh = np.linalg.svd(g)
        if smax > 0:
            kernel_dim = int(np.sum(s_full <= GAP_THRESHOLD * smax))
        else:
            kernel_dim = DIM * DIM
        x = _min_norm_trace_one(vh, max(kernel_dim, 1))
        method = "min-norm"
    else:
        bordered = g.copy()
        bordered[0, :] = trace_row()
        rhs = np.zeros(DIM * DIM, dtype=complex)
        rhs[0] = 1.0
        if np.linalg.cond(bordered) < COND_LIMIT:
            x = np.linalg.solve(bordered, rhs)
            method = "lu"
        else:
            _, _, vh = np.linalg.svd(g)
            x = vh[-1].conj()
            x = x / (trace_row() @ x)
            method = "svd"

    rho = _hermitize(unvec(x))
    rho = rho / np.trace(rho).real
    rho, emin, clipped = _clip_negative(rho)
    if clipped:
        log.debug("clipped negative eigenvalues of order 1e-9 at phi=%g", phi)
    rho.setflags(write=False)
    residual = float(np.max(np.abs(g @ vec(rho))))
    result = SteadyStateResult(
        rho=rho, phi=float(phi), residual=residual, kernel_gap=gap, min_eigenvalue=emin,
        clipped=clipped, degenerate=degenerate, method=method, config=config,
    )
    if emin < -EIG_CLIP and not degenerate:
        raise ArithmeticError(f"steady state has eigenvalue {emin:.3g} < -1e-9 (solver failure)")
    if degenerate and not allow_degenerate:
        raise NonUniqueSteadyState(
            f"generator kernel is degenerate (gap {gap:.3g} <= {GAP_THRESHOLD:g}); "
            "stationary state is not unique", result,
        )
    return result


def solve(config: SchemeConfig, phi: float | None = None, *, allow_degenerate: bool = False) -> SteadyStateResult:
    """Unique stationary state of ``config`` at loop phase ``phi``.

    Parameters
    ----------
    config : SchemeConfig
        Must satisfy ``dw == 0``.
    phi : float, optional
        Loop phase; defaults to the phase law evaluated at ``t=0, z=config.z``.
    allow_degenerate : bool
        Return a flagged minimal-norm solution instead of raising when the
        kernel is not one-dimensional.

    Raises
    ------
    NoSteadyState
        If the multiphoton detuning ``dw`` is nonzero.
    NonUniqueSteadyState
        If the kernel is degenerate and ``allow_degenerate`` is false.
    """
    exists = steady_state_exists(config)
    if not exists:
        raise NoSteadyState(exists.reason)
    if phi is None:
        phi = phase_at(config, 0.0, config.z)
    return solve_generator(assemble(config, phi), phi, scale=config.reference_rate,
                           allow_degenerate=allow_degenerate, config=config)


def solve_components(config: SchemeConfig, phi: float) -> BlochComponents:
    return solve(config, phi).components


def certify(result: SteadyStateResult) -> str:
    """One-paragraph physicality report for ``result``."""
    verdict = []
    verdict.append("degenerate" if result.degenerate else "unique")
    ok = result.physical and result.residual < RESIDUAL_LIMIT
    verdict.append("physical" if ok else "NOT physical")
    lines = [
        ", ".join(verdict),
        f"  residual      {result.residual:.3e}  (limit {RESIDUAL_LIMIT:g})",
        f"  kernel gap    {result.kernel_gap:.3e}  (threshold {GAP_THRESHOLD:g})",
        f"  min eigenval  {result.min_eigenvalue:.3e}" + ("  (clipped)" if result.clipped else ""),
        f"  trace         {np.trace(result.rho).real:.15f}",
        f"  method        {result.method}",
    ]
    return "\n".join(lines)
