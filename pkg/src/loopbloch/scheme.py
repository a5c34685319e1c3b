"""
Level-scheme description: couplings, detunings, decay channels and the loop
phase law.

Two loop topologies share one Hamiltonian and differ only in relaxation:

* ``DIAMOND``: |1> ground, |2>,|3> intermediate, |4> top.
  Channels 2->1 (gamma2), 3->1 (gamma3), 4->2 (gamma42), 4->3 (gamma43).
* ``DOUBLE_LAMBDA``: |1>,|4> excited, |2>,|3> stable.
  Channels 1->2 (gamma12), 1->3 (gamma13), 4->2 (gamma42), 4->3 (gamma43).

Rates, Rabi magnitudes and detunings share one angular-frequency unit (``gamma_ref``
records what that unit is in physical terms; it never enters the numerics).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields, replace
from typing import NamedTuple

TWO_PI = 2.0 * math.pi


class SchemeKind(enum.Enum):
    DIAMOND = "diamond"
    DOUBLE_LAMBDA = "double-lambda"

    @classmethod
    def parse(cls, text: str) -> "SchemeKind":
        key = text.strip().lower().replace("_", "-").replace("Λ", "lambda")
        aliases = {"diamond": cls.DIAMOND, "double-lambda": cls.DOUBLE_LAMBDA, "doublelambda": cls.DOUBLE_LAMBDA}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown scheme kind {text!r} (expected 'diamond' or 'double-lambda')") from None


# decay channel field -> (upper level, lower level), 1-based
DECAY_CHANNELS = {
    SchemeKind.DIAMOND: {"gamma2": (2, 1), "gamma3": (3, 1), "gamma42": (4, 2), "gamma43": (4, 3)},
    SchemeKind.DOUBLE_LAMBDA: {"gamma12": (1, 2), "gamma13": (1, 3), "gamma42": (4, 2), "gamma43": (4, 3)},
}
_ALL_DECAYS = ("gamma2", "gamma3", "gamma12", "gamma13", "gamma42", "gamma43")
_RABI = ("g12", "g13", "g24", "g34")


class Violation(NamedTuple):
    field: str
    rule: str

    def __str__(self):
        return f"{self.field}: {self.rule}"


class Existence(NamedTuple):
    exists: bool
    reason: str

    def __bool__(self):
        return self.exists


def wrap_angle(x: float) -> float:
    """Reduce an angle to [-pi, pi]."""
    return math.remainder(x, TWO_PI)


@dataclass(frozen=True)
class SchemeConfig:
    """Immutable description of one driven four-level loop."""

    kind: SchemeKind = SchemeKind.DIAMOND
    g12: float = 0.0
    g13: float = 0.0
    g24: float = 0.0
    g34: float = 0.0
    delta2: float = 0.0
    delta3: float = 0.0
    delta4: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0
    gamma12: float = 0.0
    gamma13: float = 0.0
    gamma42: float = 0.0
    gamma43: float = 0.0
    # phase law  Phi(t, z) = dw*t - dk*z + dchi
    dw: float = 0.0
    dk: float = 0.0
    dchi: float = 0.0
    # optional individual phases (chi12, chi13, chi24, chi34)
    laser_phases: tuple[float, float, float, float] | None = None
    gamma_ref: float = 1.0
    # position at which the phase law is evaluated
    z: float = 0.0

    def __post_init__(self):
        if not isinstance(self.kind, SchemeKind):
            object.__setattr__(self, "kind", SchemeKind.parse(str(self.kind)))
        if self.laser_phases is not None:
            object.__setattr__(self, "laser_phases", tuple(float(c) for c in self.laser_phases))

    @property
    def gamma4(self) -> float:
        """Total decay rate out of level |4>."""
        return self.gamma42 + self.gamma43

    @property
    def decay_channels(self) -> list[tuple[int, int, float]]:
        """``(upper, lower, rate)`` for every channel of this scheme kind."""
        return [(u, lo, getattr(self, name)) for name, (u, lo) in DECAY_CHANNELS[self.kind].items()]

    @property
    def reference_rate(self) -> float:
        """Largest total decay rate out of any single level.

        Used to scale the generator before factorization. Falls back to the
        largest coupling or detuning when there is no decay at all.
        """
        if self.kind is SchemeKind.DIAMOND:
            rate = max(self.gamma2, self.gamma3, self.gamma4)
        else:
            rate = max(self.gamma12 + self.gamma13, self.gamma4)
        if rate > 0:
            return rate
        other = max(abs(v) for v in (self.g12, self.g13, self.g24, self.g34, self.delta2, self.delta3, self.delta4))
        return other if other > 0 else 1.0

    def with_phase(self, dchi: float) -> "SchemeConfig":
        """Copy with a new constant loop phase (individual phases dropped)."""
        return replace(self, dchi=dchi, laser_phases=None)


def validate(config: SchemeConfig) -> list[Violation]:
    """Check the invariants of ``config`` and return every violation found."""
    out: list[Violation] = []
    for name in _RABI:
        val = getattr(config, name)
        if not math.isfinite(val):
            out.append(Violation(name, "non-finite Rabi frequency"))
        elif val < 0:
            out.append(Violation(name, "negative Rabi frequency"))
    for name in _ALL_DECAYS:
        val = getattr(config, name)
        if not math.isfinite(val):
            out.append(Violation(name, "non-finite decay rate"))
        elif val < 0:
            out.append(Violation(name, "negative decay rate"))
        elif val != 0 and name not in DECAY_CHANNELS[config.kind]:
            out.append(Violation(name, f"decay channel not present in {config.kind.value} scheme"))
    for name in ("delta2", "delta3", "delta4", "dw", "dk", "dchi", "z"):
        if not math.isfinite(getattr(config, name)):
            out.append(Violation(name, "non-finite value"))
    if not (math.isfinite(config.gamma_ref) and config.gamma_ref > 0):
        out.append(Violation("gamma_ref", "reference rate must be positive and finite"))
    if config.laser_phases is not None:
        chis = config.laser_phases
        if len(chis) != 4 or not all(math.isfinite(c) for c in chis):
            out.append(Violation("laser_phases", "need four finite phases (chi12, chi13, chi24, chi34)"))
        else:
            mismatch = wrap_angle(loop_phase_from_lasers(chis) - config.dchi)
            if abs(mismatch) > 1e-12:
                out.append(Violation("dchi", f"phase mismatch with laser_phases by {mismatch:.3g} rad"))
    return out


def ensure_valid(config: SchemeConfig) -> None:
    problems = validate(config)
    if problems:
        raise ValueError("invalid scheme configuration: " + "; ".join(map(str, problems)))


def loop_phase_from_lasers(chis) -> float:
    """chi12 + chi24 - chi13 - chi34."""
    chi12, chi13, chi24, chi34 = chis
    return chi12 + chi24 - chi13 - chi34


def phase_at(config: SchemeConfig, t: float, z: float) -> float:
    """Loop phase dw*t - dk*z + dchi, not reduced modulo 2 pi."""
    return config.dw * t - config.dk * z + config.dchi


def alpha(config: SchemeConfig) -> float:
    """Decay balance gamma4 / (gamma2 + gamma3) of a diamond scheme."""
    if config.kind is not SchemeKind.DIAMOND:
        raise ValueError("alpha is defined for the diamond scheme only")
    denom = config.gamma2 + config.gamma3
    if denom == 0:
        raise ZeroDivisionError("alpha undefined: gamma2 + gamma3 = 0")
    return config.gamma4 / denom


def steady_state_exists(config: SchemeConfig) -> Existence:
    """A stationary state exists only on multiphoton resonance (dw = 0)."""
    if config.dw != 0:
        return Existence(
            False,
            f"multiphoton detuning dw={config.dw!r} != 0: the loop phase drifts in time, "
            "so the equations have no stationary solution (steady state requires dw = 0)",
        )
    if config.dk != 0:
        return Existence(True, "dw = 0 (multiphoton resonance); steady state is z-dependent since dk != 0")
    return Existence(True, "dw = 0 (multiphoton resonance)")


@dataclass(frozen=True)
class SymmetricParams:
    """Resonant symmetric diamond: equal Rabi frequencies and balanced decays.

    ``omega`` is g/gamma, ``alpha`` is gamma4/(2 gamma), ``phi`` the loop phase.
    """

    omega: float
    alpha: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.omega >= 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be finite and >= 0, got {self.omega!r}")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite and > 0, got {self.alpha!r}")

    def to_config(self, gamma: float = 1.0, kind: SchemeKind = SchemeKind.DIAMOND) -> SchemeConfig:
        g = self.omega * gamma
        half_g4 = self.alpha * gamma  # gamma4/2 = alpha * (gamma2 + gamma3) / 2
        if kind is SchemeKind.DIAMOND:
            rates = dict(gamma2=gamma, gamma3=gamma)
        else:
            rates = dict(gamma12=gamma, gamma13=gamma)
        return SchemeConfig(
            kind=kind, g12=g, g13=g, g24=g, g34=g,
            gamma42=half_g4, gamma43=half_g4, dchi=self.phi, **rates,
        )

    @classmethod
    def from_config(cls, config: SchemeConfig, phi: float | None = None) -> "SymmetricParams":
        """Recover (omega, alpha, phi) from a symmetric diamond config."""
        gs = {config.g12, config.g13, config.g24, config.g34}
        if len(gs) != 1 or config.gamma2 != config.gamma3 or config.gamma42 != config.gamma43:
            raise ValueError("configuration is not symmetric")
        if any((config.delta2, config.delta3, config.delta4)):
            raise ValueError("configuration is not resonant")
        return cls(omega=config.g12 / config.gamma2, alpha=alpha(config),
                   phi=config.dchi if phi is None else phi)


def config_fields() -> tuple[str, ...]:
    return tuple(f.name for f in fields(SchemeConfig))
