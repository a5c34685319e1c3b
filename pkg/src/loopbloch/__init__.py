"""Steady-state and transient optical Bloch dynamics of closed-loop
four-level atoms (diamond and double-Lambda schemes)."""

__version__ = "0.1.0"

from .core import (
    BlochComponents,
    basis_state,
    bloch_components,
    population_in,
    projector,
    superposition_14,
    superposition_23,
    u14_from_superpositions,
    u23_from_superpositions,
)
from .errors import (
    ConfigError,
    IntegrationError,
    NonUniqueSteadyState,
    NoSteadyState,
    PoleAtZero,
)
from .scheme import SchemeConfig, SchemeKind, SymmetricParams
from .steady import SteadyStateResult, certify, solve

__all__ = [
    "BlochComponents",
    "ConfigError",
    "IntegrationError",
    "NoSteadyState",
    "NonUniqueSteadyState",
    "PoleAtZero",
    "SchemeConfig",
    "SchemeKind",
    "SteadyStateResult",
    "SymmetricParams",
    "basis_state",
    "bloch_components",
    "certify",
    "population_in",
    "projector",
    "solve",
    "superposition_14",
    "superposition_23",
    "u14_from_superpositions",
    "u23_from_superpositions",
]
