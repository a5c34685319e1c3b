"""
Four-level state primitives.

Level labels follow the atomic numbering: state |1> is stored at index 0,
|2> at 1, |3> at 2 and |4> at 3. Every array produced here uses that order.

Density matrices are plain ``(4, 4)`` complex128 arrays; state vectors are
``(4,)`` complex128 arrays. Arrays returned by the constructors in this module
are marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from numpy.typing import ArrayLike, NDArray

DIM = 4
NORM_TOL = 1e-6

# (row, col) index pairs, zero-based
_PAIRS = {
    "12": (0, 1),
    "13": (0, 2),
    "24": (1, 3),
    "34": (2, 3),
    "14": (0, 3),
    "23": (1, 2),
}


def _frozen(a: NDArray) -> NDArray:
    a.setflags(write=False)
    return a


def basis_state(level: int) -> NDArray[np.complex128]:
    """Return the bare atomic state |level>, ``level`` in 1..4."""
    if level not in (1, 2, 3, 4):
        raise ValueError(f"level must be 1..4, got {level!r}")
    v = np.zeros(DIM, dtype=complex)
    v[level - 1] = 1.0
    return _frozen(v)


def superposition_23(theta: float) -> NDArray[np.complex128]:
    """(|2> + exp(-i theta)|3>) / sqrt(2)."""
    v = np.zeros(DIM, dtype=complex)
    v[1] = 1.0
    v[2] = np.exp(-1j * theta)
    return _frozen(v / math.sqrt(2.0))


def superposition_14(theta: float) -> NDArray[np.complex128]:
    """(|1> + exp(+i theta)|4>) / sqrt(2).

    Note the opposite sign of the phase compared with
    :func:`superposition_23`; both conventions are kept as-is.
    """
    v = np.zeros(DIM, dtype=complex)
    v[0] = 1.0
    v[3] = np.exp(1j * theta)
    return _frozen(v / math.sqrt(2.0))


def projector(psi: ArrayLike) -> NDArray[np.complex128]:
    """Pure-state density matrix |psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return _frozen(np.outer(psi, psi.conj()))


def population_in(rho: ArrayLike, psi: ArrayLike) -> float:
    """Occupation <psi|rho|psi> of the normalized state ``psi``.

    Raises
    ------
    ValueError
        If ``|psi|`` differs from one by more than 1e-6.
    """
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm={norm:.9g})")
    return float(np.real(psi.conj() @ np.asarray(rho) @ psi))


def u14_from_superpositions(rho: ArrayLike) -> float:
    """Half the population difference between Psi_14(0) and Psi_14(pi).

    Algebraically identical to Re rho_14; kept as a separate route so the
    dark-state reading of the two-photon coherence can be checked.
    """
    return 0.5 * (
        population_in(rho, superposition_14(0.0)) - population_in(rho, superposition_14(math.pi))
    )


def u23_from_superpositions(rho: ArrayLike) -> float:
    """Same construction as :func:`u14_from_superpositions` for levels 2, 3."""
    return 0.5 * (
        population_in(rho, superposition_23(0.0)) - population_in(rho, superposition_23(math.pi))
    )


def v14_from_superpositions(rho: ArrayLike) -> float:
    """Im <Psi_14(pi)|rho|Psi_14(0)>, equal to Im rho_14."""
    rho = np.asarray(rho)
    return float(np.imag(superposition_14(math.pi).conj() @ rho @ superposition_14(0.0)))


def v23_from_superpositions(rho: ArrayLike) -> float:
    """Im <Psi_23(pi)|rho|Psi_23(0)>, equal to Im rho_23."""
    rho = np.asarray(rho)
    return float(np.imag(superposition_23(math.pi).conj() @ rho @ superposition_23(0.0)))


@dataclass(frozen=True)
class BlochComponents:
    """Real-valued view of a four-level density matrix.

    ``u_ij``/``v_ij`` are the real/imaginary parts of rho_ij. The 3-4
    coherence is reported in the rotated form rho_34 * exp(i phi), stored as
    ``u34t``/``v34t``; ``phi`` records the rotation angle used.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    u12: float
    v12: float
    u13: float
    v13: float
    u24: float
    v24: float
    u34t: float
    v34t: float
    u14: float
    v14: float
    u23: float
    v23: float
    phi: float = 0.0

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        """The sixteen component names in canonical column order (``phi`` excluded)."""
        return tuple(f.name for f in fields(cls) if f.name != "phi")

    def as_array(self) -> NDArray[np.float64]:
        return np.array([getattr(self, n) for n in self.field_names()])

    def as_dict(self) -> dict[str, float]:
        return {n: getattr(self, n) for n in self.field_names()}

    @property
    def population_sum(self) -> float:
        return self.rho11 + self.rho22 + self.rho33 + self.rho44

    def to_density_matrix(self) -> NDArray[np.complex128]:
        """Rebuild the Hermitian matrix these components were taken from."""
        rho = np.diag([self.rho11, self.rho22, self.rho33, self.rho44]).astype(complex)
        for key in ("12", "13", "24", "14", "23"):
            i, j = _PAIRS[key]
            rho[i, j] = complex(getattr(self, "u" + key), getattr(self, "v" + key))
        rho[2, 3] = complex(self.u34t, self.v34t) * np.exp(-1j * self.phi)
        iu = np.triu_indices(DIM, 1)
        rho[(iu[1], iu[0])] = rho[iu].conj()
        return rho


def bloch_components(rho: ArrayLike, phi: float) -> BlochComponents:
    """Split ``rho`` into populations and real/imaginary coherences.

    Parameters
    ----------
    rho : array_like, shape (4, 4)
        Density matrix, index 0 = level 1.
    phi : float
        Loop phase used to rotate the 3-4 coherence.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    values: dict[str, float] = {
        "rho11": rho[0, 0].real,
        "rho22": rho[1, 1].real,
        "rho33": rho[2, 2].real,
        "rho44": rho[3, 3].real,
    }
    for key in ("12", "13", "24", "14", "23"):
        z = rho[_PAIRS[key]]
        values["u" + key] = z.real
        values["v" + key] = z.imag
    z34 = rho[2, 3] * np.exp(1j * phi)
    values["u34t"] = z34.real
    values["v34t"] = z34.imag
    return BlochComponents(**{k: float(v) for k, v in values.items()}, phi=float(phi))


def check_density_matrix(rho: ArrayLike, *, herm_tol=1e-12, trace_tol=1e-10, eig_tol=1e-9) -> list[str]:
    """List the physicality conditions ``rho`` violates (empty if none)."""
    rho = np.asarray(rho, dtype=complex)
    problems = []
    if rho.shape != (DIM, DIM):
        return [f"shape {rho.shape} != (4, 4)"]
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        problems.append(f"not Hermitian (max deviation {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        problems.append(f"trace {tr:.12g} != 1")
    emin = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
    if emin < -eig_tol:
        problems.append(f"negative eigenvalue {emin:.3g}")
    return problems
