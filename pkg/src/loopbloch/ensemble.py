"""
Doppler averaging of steady states over a thermal velocity distribution.

In the Doppler-free two-photon geometry (k12 = k13 = -k24 = -k34) an atom
with momentum p_z sees the intermediate levels shifted by delta = k p_z / m
while the two-photon detuning delta4 is unchanged. The steady state is
therefore averaged over delta ~ Normal(0, width^2) with

    delta2 -> delta2 + delta,   delta3 -> delta3 + delta,   delta4 unchanged.

Two quadrature rules are available. ``"hermite"`` is Gauss-Hermite. It is exact
for polynomials against the Gaussian weight, but it converges slowly once the
width exceeds the power-broadened linewidth. ``"trapezoid"`` is a uniform grid
over +-8 sigma, which converges exponentially for this smooth, rapidly
decaying integrand. Both rules use an odd node count with a node at delta = 0.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray
from scipy.special import roots_hermite

from .core import BlochComponents, bloch_components
from .errors import NoSteadyState
from .scheme import SchemeConfig, steady_state_exists
from .steady import solve

TRAPEZOID_HALF_SPAN = 8.0  # in standard deviations


class EnsembleNodeError(RuntimeError):
    def __init__(self, delta, cause):
        super().__init__(f"steady-state solve failed at Doppler shift delta={delta!r}: {cause}")
        self.delta = delta


@dataclass(frozen=True)
class ThermalSpec:
    """Gaussian Doppler distribution and its quadrature.

    ``width`` is the standard deviation of delta = k p_z / m (angular
    frequency, same unit as the config rates).
    """

    width: float
    nodes: int = 31
    rule: str = "hermite"

    def __post_init__(self):
        if not (self.width >= 0 and math.isfinite(self.width)):
            raise ValueError(f"width must be finite and >= 0, got {self.width!r}")
        if self.nodes < 3 or self.nodes % 2 == 0:
            raise ValueError(f"node count must be odd and >= 3, got {self.nodes!r}")
        if self.rule not in ("hermite", "trapezoid"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")

    def quadrature(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Detuning nodes and weights (weights sum to 1)."""
        if self.width == 0:
            return np.zeros(1), np.ones(1)
        if self.rule == "hermite":
            x, w = roots_hermite(self.nodes)
            x[self.nodes // 2] = 0.0
            return math.sqrt(2.0) * self.width * x, w / math.sqrt(math.pi)
        half = TRAPEZOID_HALF_SPAN * self.width
        d = np.linspace(-half, half, self.nodes)
        d[self.nodes // 2] = 0.0
        w = np.exp(-0.5 * (d / self.width) ** 2)
        return d, w / w.sum()


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("LOOPBLOCH_THREADS", "")))
    except ValueError:
        return min(8, os.cpu_count() or 1)


def node_states(config: SchemeConfig, phi: float, spec: ThermalSpec):
    """Steady-state density matrices at each quadrature node, in node order."""
    exists = steady_state_exists(config)
    if not exists:
        raise NoSteadyState(exists.reason)
    deltas, weights = spec.quadrature()

    def one(delta):
        shifted = replace(config, delta2=config.delta2 + delta, delta3=config.delta3 + delta)
        try:
            return solve(shifted, phi).rho
        except Exception as exc:  # abort with the offending node
            raise EnsembleNodeError(float(delta), exc) from exc

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        rhos = list(pool.map(one, deltas))
    return deltas, weights, rhos


def doppler_average_matrix(config: SchemeConfig, phi: float, spec: ThermalSpec) -> NDArray[np.complex128]:
    _, weights, rhos = node_states(config, phi, spec)
    acc = np.zeros((4, 4), dtype=complex)
    for w, rho in zip(weights, rhos):  # fixed reduction order
        acc += w * rho
    return acc


def doppler_average(config: SchemeConfig, phi: float, spec: ThermalSpec) -> BlochComponents:
    """Thermally averaged steady-state components at loop phase ``phi``."""
    return bloch_components(doppler_average_matrix(config, phi, spec), phi)
