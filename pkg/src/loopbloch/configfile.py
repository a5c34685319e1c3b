"""
Plain-text scheme configuration.

The format is ``key = value`` lines grouped under four sections. Blank lines
and lines starting with ``#`` or ``;`` are ignored. Angles are in radians.
Rates, Rabi frequencies and detunings are in units of ``gamma_ref``. Numeric
values may be written as multiples of pi (``pi``, ``-pi/2``, ``3*pi/4``,
``2pi``).

    [scheme]
    kind = diamond            # or double-lambda
    gamma_ref = 1.0           # physical value of the rate unit (metadata only)

    [lasers]
    g12 = 2                   # Rabi frequencies, >= 0
    g13 = 2
    g24 = 2
    g34 = 2
    delta2 = 0                # detunings (optional, default 0)
    delta3 = 0
    delta4 = 0
    chi12 = 0                 # individual laser phases: all four or none
    chi13 = 0
    chi24 = 0
    chi34 = 0

    [decays]
    gamma2 = 1                # diamond: 2->1, 3->1, 4->2, 4->3
    gamma3 = 1
    gamma42 = 1
    gamma43 = 1
    # double-lambda uses gamma12, gamma13 (1->2, 1->3) instead of gamma2, gamma3

    [phase]
    dw = 0                    # multiphoton detuning
    dk = 0                    # wave-vector mismatch
    dchi = pi                 # loop phase offset
    z = 0                     # position at which the phase law is evaluated

If ``chi12..chi34`` are given and ``dchi`` is not, ``dchi`` is derived from them.
"""

from __future__ import annotations

import math
import re

from .errors import ConfigError
from .scheme import SchemeConfig, SchemeKind, loop_phase_from_lasers, validate

SECTIONS = {
    "scheme": ("kind", "gamma_ref"),
    "lasers": ("g12", "g13", "g24", "g34", "delta2", "delta3", "delta4", "chi12", "chi13", "chi24", "chi34"),
    "decays": ("gamma2", "gamma3", "gamma12", "gamma13", "gamma42", "gamma43"),
    "phase": ("dw", "dk", "dchi", "z"),
}
_CHI = ("chi12", "chi13", "chi24", "chi34")

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(
    rf"^(?P<sign>[+-])?\s*(?:(?P<coef>{_NUM})\s*\*?\s*)?(?P<pi>pi|π)?\s*(?:/\s*(?P<div>{_NUM}))?$"
)


def parse_real(text: str) -> float:
    """Parse a float, optionally written as a rational multiple of pi."""
    s = text.strip()
    m = _REAL_RE.match(s)
    if not s or m is None or (m.group("coef") is None and m.group("pi") is None):
        raise ValueError(f"not a number: {text!r}")
    value = float(m.group("coef")) if m.group("coef") is not None else 1.0
    if m.group("pi"):
        value *= math.pi
    if m.group("div") is not None:
        value /= float(m.group("div"))
    return -value if m.group("sign") == "-" else value


def parse_config(text: str) -> SchemeConfig:
    """Parse configuration text; raises :class:`ConfigError` with a line/column."""
    section = None
    values: dict[str, float | SchemeKind] = {}
    where: dict[str, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped[0] in "#;":
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("unterminated section header", lineno, indent + 1)
            name = stripped[1:-1].strip().lower()
            if name not in SECTIONS:
                raise ConfigError(f"unknown section [{name}] (expected one of {', '.join(SECTIONS)})", lineno, indent + 2)
            section = name
            continue
        if "=" not in raw:
            raise ConfigError("expected 'key = value'", lineno, indent + 1)
        key_part, _, value_part = raw.partition("=")
        key = key_part.strip().lower()
        val_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        value_text = re.split(r"\s[#;]", value_part, maxsplit=1)[0].strip()
        if section is None:
            raise ConfigError(f"key {key!r} appears before any [section] header", lineno, indent + 1)
        if key not in SECTIONS[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]", lineno, indent + 1)
        if key in values:
            first = where[key][0]
            raise ConfigError(f"duplicate key {key!r} (first set on line {first})", lineno, indent + 1)
        if not value_text:
            raise ConfigError(f"missing value for {key!r}", lineno, val_col)
        try:
            values[key] = SchemeKind.parse(value_text) if key == "kind" else parse_real(value_text)
        except ValueError as exc:
            raise ConfigError(str(exc), lineno, val_col) from None
        where[key] = (lineno, val_col)

    chis = [k for k in _CHI if k in values]
    if chis and len(chis) != 4:
        missing = sorted(set(_CHI) - set(chis))
        line = where[chis[0]][0]
        raise ConfigError(f"laser phases must be given all together; missing {', '.join(missing)}", line)
    kwargs = {k: v for k, v in values.items() if k not in _CHI}
    if chis:
        kwargs["laser_phases"] = tuple(values[k] for k in _CHI)
        kwargs.setdefault("dchi", loop_phase_from_lasers(kwargs["laser_phases"]))
    config = SchemeConfig(**kwargs)
    problems = validate(config)
    if problems:
        first = problems[0]
        pos = where.get(first.field) or where.get("chi12") or (None, None)
        raise ConfigError("; ".join(map(str, problems)), *pos)
    return config


def load_config(path) -> SchemeConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(config: SchemeConfig) -> str:
    """Canonical text for ``config``; ``parse_config`` reproduces it exactly."""
    lines = ["[scheme]", f"kind = {config.kind.value}", f"gamma_ref = {config.gamma_ref!r}", "", "[lasers]"]
    for key in SECTIONS["lasers"][:7]:
        lines.append(f"{key} = {getattr(config, key)!r}")
    if config.laser_phases is not None:
        for key, chi in zip(_CHI, config.laser_phases):
            lines.append(f"{key} = {chi!r}")
    lines += ["", "[decays]"]
    for key in SECTIONS["decays"]:
        val = getattr(config, key)
        if key in ("gamma2", "gamma3") and config.kind is SchemeKind.DOUBLE_LAMBDA and val == 0:
            continue
        if key in ("gamma12", "gamma13") and config.kind is SchemeKind.DIAMOND and val == 0:
            continue
        lines.append(f"{key} = {val!r}")
    lines += ["", "[phase]"]
    for key in SECTIONS["phase"]:
        lines.append(f"{key} = {getattr(config, key)!r}")
    return "\n".join(lines) + "\n"
