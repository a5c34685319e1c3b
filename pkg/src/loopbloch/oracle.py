"""
Closed-form steady states of the resonant symmetric diamond scheme.

Three families are provided:

* :func:`analytic_alpha1` -- balanced decay (alpha = 1), any phase;
* :func:`analytic_phi_odd` -- phase an odd multiple of pi, any alpha;
* :func:`analytic_phi_even` -- phase an even multiple of pi, any alpha;

plus the weak-drive two-photon transition strength
:func:`two_photon_probability`.

Each family is written over plain arithmetic on its trigonometric inputs
(``_alpha1_terms`` and friends), so the same code can be evaluated with
sympy symbols for exact algebraic checks. The expressions are kept in their
unsimplified polynomial form on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BlochComponents
from .errors import PoleAtZero
from .scheme import SchemeConfig


@dataclass(frozen=True)
class OracleOutput:
    components: BlochComponents
    denominator: float

    def __getattr__(self, name):
        # forward component access, e.g. out.rho11
        if name.startswith("__"):
            raise AttributeError(name)
        return getattr(self.components, name)


def _from_symmetric(phi, D, rho11, rho22, rho44, u12, v12, u24, v24, u14, v14, u23, v23) -> OracleOutput:
    """Expand the symmetric set (rho22=rho33, u13=-u12, v13=v12, u34t=-u24, v34t=v24)."""
    comps = BlochComponents(
        rho11=float(rho11), rho22=float(rho22), rho33=float(rho22), rho44=float(rho44),
        u12=float(u12), v12=float(v12), u13=float(-u12), v13=float(v12),
        u24=float(u24), v24=float(v24), u34t=float(-u24), v34t=float(v24),
        u14=float(u14), v14=float(v14), u23=float(u23), v23=float(v23),
        phi=float(phi),
    )
    return OracleOutput(comps, float(D))


def _alpha1_terms(W, s, sin_phi, c):
    """Balanced-decay family.

    ``W`` = g/gamma, ``s`` = sin^2(phi/2), ``sin_phi`` = sin(phi),
    ``c`` = cos^2(phi/2). Returns a dict of the printed components and D.
    Only +, -, *, / are used.
    """
    S = sin_phi * sin_phi  # sin^2(phi)
    D = (1 + (22 * W**2) / 3 + (4 * W**4) / 9 * (7 * s + 27)
         + (16 * W**6) / 9 * (s + 3) + (8 * W**8) / 9 * S)
    rho11 = (1 + (16 * W**2) / 3 + (19 * W**4) / 9 * (s + 3)
             + (4 * W**6) / 9 * (5 * s + 3) + (2 * W**8) / 9 * S) / D
    rho22 = W**2 / D * (1 + W**2 / 3 * (7 + 3 * s) + (4 * W**4) / 9 * (3 + s) + (2 * W**6) / 9 * S)
    rho44 = W**4 / D * c * (1 + (4 * W**2) / 3 + (8 * W**4) / 9 * s)
    u12 = W**3 / (2 * D) * sin_phi * (-1 + (2 * W**2) / 3 + (8 * W**4) / 9 * s)
    v12 = W / D * (1 + W**2 / 3 * (7 + 3 * s) + (4 * W**4) / 9 * (3 + s) + (2 * W**6) / 9 * S)
    u24 = W**3 / (2 * D) * sin_phi * (1 + 2 * W**2 + (8 * W**4) / 9 * s)
    v24 = W**3 / D * c * (1 + (4 * W**2) / 3 + (8 * W**4) / 9 * s)
    u14 = -W**2 / D * c * (1 + (4 * W**2) / 3 + (4 * W**4) / 9 * s)
    v14 = W**2 / (2 * D) * sin_phi * (1 + (4 * W**2) / 3 + (4 * W**4) / 9 * s)
    u23 = W**2 / D * (1 + (2 * W**2) / 3 * (2 + 3 * s) + (4 * W**4) / 9 * s * (1 + 3 * s))
    v23 = -W**4 / D * sin_phi * (1 + (2 * W**2) / 3 * s)
    return dict(D=D, rho11=rho11, rho22=rho22, rho44=rho44, u12=u12, v12=v12, u24=u24,
                v24=v24, u14=u14, v14=v14, u23=u23, v23=v23)


def _phi_odd_terms(W):
    D = 1 + 4 * W**2
    return dict(D=D, rho11=(1 + 2 * W**2) / D, rho22=W**2 / D, rho44=0 * W,
                u12=0 * W, v12=W / D, u24=0 * W, v24=0 * W, u14=0 * W, v14=0 * W,
                u23=W**2 / D, v23=0 * W)


def _phi_even_terms(W, a):
    D = a**2 * (1 + 2 * a) + W**2 * a * (3 + 7 * a + 8 * a**2) + 2 * W**4 * (1 + 4 * a + a**2)
    bracket = a * (1 + 2 * a) + W**2 * (1 - a)
    return dict(
        D=D,
        rho11=(a**2 * (1 + 2 * a) + W**2 * a * (3 + 5 * a + 4 * a**2) + W**4 * (1 + 2 * a)) / D,
        rho22=a * W**2 / D * (a * (1 + 2 * a) + W**2 * (a + 2)),
        rho44=W**4 / D * (1 + 2 * a),
        v12=a * W / D * (a * (1 + 2 * a) + W**2 * (2 + a)),
        v24=a * W**3 / D * (1 + 2 * a),
        u23=a * W**2 / D * bracket,
        u14=-W**2 / D * bracket,
        u12=0 * W, u24=0 * W, v14=0 * W, v23=0 * W,
    )


def _check_omega(omega):
    if not (omega >= 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be finite and >= 0, got {omega!r}")


def analytic_alpha1(omega: float, phi: float) -> OracleOutput:
    """Steady state for alpha = 1 (gamma4 = 2 gamma) at Rabi ratio ``omega`` = g/gamma."""
    _check_omega(omega)
    half = math.sin(phi / 2)
    t = _alpha1_terms(omega, half * half, math.sin(phi), math.cos(phi / 2) ** 2)
    return _from_symmetric(phi, **t)


def analytic_phi_odd(omega: float, phi: float = math.pi) -> OracleOutput:
    """Steady state at phi = (2n+1) pi; independent of alpha."""
    _check_omega(omega)
    return _from_symmetric(phi, **_phi_odd_terms(omega))


def analytic_phi_even(omega: float, alpha: float, phi: float = 0.0) -> OracleOutput:
    """Steady state at phi = 2 n pi for decay balance ``alpha`` = gamma4/(2 gamma)."""
    _check_omega(omega)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be finite and > 0, got {alpha!r}")
    return _from_symmetric(phi, **_phi_even_terms(omega, alpha))


def two_photon_probability(config: SchemeConfig, phi: float) -> float:
    """Unnormalized weak-drive 1 -> 4 transition strength.

    |g12 g24 / (delta2 - i gamma2/2) + g13 g34 e^{i phi} / (delta3 - i gamma3/2)|^2,
    with no overall prefactor; only ratios are meaningful.

    Raises
    ------
    PoleAtZero
        If a path with nonzero coupling has a vanishing denominator.
    """
    paths = (
        (config.g12 * config.g24, complex(config.delta2, -config.gamma2 / 2), 1.0),
        (config.g13 * config.g34, complex(config.delta3, -config.gamma3 / 2), complex(math.cos(phi), math.sin(phi))),
    )
    amp = 0j
    for weight, denom, phase in paths:
        if weight == 0:
            continue
        if denom == 0:
            raise PoleAtZero("resonant path with zero detuning and zero width")
        amp += weight * phase / denom
    return abs(amp) ** 2
