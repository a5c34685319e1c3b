"""
Rotating-frame Hamiltonian, radiative dissipator and the 16x16 generator.

Vectorization is column stacking: ``vec(rho)[4*col + row] = rho[row, col]``,
i.e. ``rho.reshape(-1, order="F")``. With that convention

    vec(A @ X)  = (I kron A)   vec(X)
    vec(X @ B)  = (B.T kron I) vec(X)
    vec(A X B)  = (B.T kron A) vec(X)

and the master equation d rho/dt = -i[H, rho] + L rho becomes
d vec(rho)/dt = G vec(rho). Units are angular frequency with hbar = 1.
"""

from __future__ import annotations

import functools

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import DIM
from .scheme import SchemeConfig, ensure_valid

_I = np.eye(DIM)


def vec(rho: ArrayLike) -> NDArray[np.complex128]:
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: ArrayLike) -> NDArray[np.complex128]:
    return np.asarray(v, dtype=complex).reshape(DIM, DIM, order="F")


def spre(a: NDArray) -> NDArray:
    """Superoperator of left multiplication X -> A X."""
    return np.kron(_I, a)


def spost(a: NDArray) -> NDArray:
    """Superoperator of right multiplication X -> X A."""
    return np.kron(a.T, _I)


def lindblad_term(jump: NDArray) -> NDArray:
    """D[J] X = J X J^dag - (J^dag J X + X J^dag J) / 2."""
    jd = jump.conj().T
    jdj = jd @ jump
    return np.kron(jump.conj(), jump) - 0.5 * (spre(jdj) + spost(jdj))


def trace_row() -> NDArray[np.complex128]:
    """Row vector t with t @ vec(X) = tr X."""
    return vec(_I)


def _ro(a):
    a.setflags(write=False)
    return a


def build_hamiltonian(config: SchemeConfig, phi: float) -> NDArray[np.complex128]:
    """H = sum_j delta_j |j><j| + (g12|2><1| + g13|3><1| + g24|4><2| + g34 e^{i phi}|4><3| + h.c.)/2.

    Only the 3-4 coupling carries the loop phase. The centre-of-mass kinetic
    term is not included.
    """
    ensure_valid(config)
    h = np.zeros((DIM, DIM), dtype=complex)
    h[1, 1], h[2, 2], h[3, 3] = config.delta2, config.delta3, config.delta4
    h[1, 0] = 0.5 * config.g12
    h[2, 0] = 0.5 * config.g13
    h[3, 1] = 0.5 * config.g24
    h[3, 2] = 0.5 * config.g34 * np.exp(1j * phi)
    h[0, 1], h[0, 2], h[1, 3], h[2, 3] = h[1, 0].conjugate(), h[2, 0].conjugate(), h[3, 1].conjugate(), h[3, 2].conjugate()
    return _ro(h)


def gauge_unitary(laser_phases) -> NDArray[np.complex128]:
    """Diagonal unitary diag(1, e^{-i chi12}, e^{-i chi13}, e^{-i(chi12+chi24)})."""
    chi12, chi13, chi24, _ = laser_phases
    return _ro(np.diag(np.exp(-1j * np.array([0.0, chi12, chi13, chi12 + chi24]))))


def hamiltonian_with_laser_phases(config: SchemeConfig) -> NDArray[np.complex128]:
    """Hamiltonian with every coupling carrying its own phase, g_ij e^{-i chi_ij}.

    ``U^dag H U`` with ``U = gauge_unitary(config.laser_phases)`` equals
    ``build_hamiltonian(config, chi12 + chi24 - chi13 - chi34)``.
    """
    ensure_valid(config)
    if config.laser_phases is None:
        raise ValueError("config has no individual laser phases")
    chi12, chi13, chi24, chi34 = config.laser_phases
    h = np.zeros((DIM, DIM), dtype=complex)
    h[1, 1], h[2, 2], h[3, 3] = config.delta2, config.delta3, config.delta4
    h[1, 0] = 0.5 * config.g12 * np.exp(-1j * chi12)
    h[2, 0] = 0.5 * config.g13 * np.exp(-1j * chi13)
    h[3, 1] = 0.5 * config.g24 * np.exp(-1j * chi24)
    h[3, 2] = 0.5 * config.g34 * np.exp(-1j * chi34)
    h = h + np.tril(h, -1).conj().T
    return _ro(h)


def hamiltonian_superoperator(h: NDArray) -> NDArray[np.complex128]:
    """-i[H, .] as a 16x16 matrix."""
    return -1j * (spre(h) - spost(h))


def jump_operators(config: SchemeConfig) -> list[NDArray[np.complex128]]:
    """sqrt(rate) |lower><upper| for every decay channel of ``config``."""
    ops = []
    for upper, lower, rate in config.decay_channels:
        j = np.zeros((DIM, DIM), dtype=complex)
        j[lower - 1, upper - 1] = np.sqrt(rate)
        ops.append(j)
    return ops


@functools.lru_cache(maxsize=256)
def build_dissipator(config: SchemeConfig) -> NDArray[np.complex128]:
    """Radiative part of the generator, one Lindblad channel per decay path."""
    ensure_valid(config)
    d = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for j in jump_operators(config):
        d += lindblad_term(j)
    return _ro(d)


def assemble(config: SchemeConfig, phi: float) -> NDArray[np.complex128]:
    """Full generator G(phi) = -i[H(phi), .] + dissipator."""
    return _ro(hamiltonian_superoperator(build_hamiltonian(config, phi)) + build_dissipator(config))


@functools.lru_cache(maxsize=64)
def phase_decomposition(config: SchemeConfig) -> tuple[NDArray, NDArray, NDArray]:
    """Split G(phi) = G0 + e^{i phi} Gp + e^{-i phi} Gm.

    G depends on phi only through the 3-4 coupling, so the three parts are
    exact and let a drifting phase be applied without re-assembly.
    """
    h0 = np.array(build_hamiltonian(config, 0.0))
    h0[3, 2] = h0[2, 3] = 0.0
    up = np.zeros((DIM, DIM), dtype=complex)
    up[3, 2] = 0.5 * config.g34
    g0 = hamiltonian_superoperator(h0) + build_dissipator(config)
    gp = hamiltonian_superoperator(up)
    gm = hamiltonian_superoperator(up.T.copy())
    return _ro(g0), _ro(gp), _ro(gm)


def apply(generator: ArrayLike, rho: ArrayLike) -> NDArray[np.complex128]:
    """Time derivative of ``rho`` under ``generator``, as a 4x4 matrix."""
    return unvec(np.asarray(generator) @ vec(rho))
