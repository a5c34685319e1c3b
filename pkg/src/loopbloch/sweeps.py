"""
Parameter sweeps and their CSV serialization.

CSV layout: optional ``#`` metadata lines (tool version, command, config
echo), one header row, then one row per axis value. Columns are the axis
name followed by the sixteen :class:`BlochComponents` fields in canonical
order. Numbers are written with 17 significant digits so that a float survives
a write/read round trip unchanged.
"""

from __future__ import annotations

import datetime as _dt
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .configfile import format_config, parse_real
from .core import BlochComponents
from .scheme import SchemeConfig, SchemeKind
from .steady import solve

COLUMNS = BlochComponents.field_names()


def parse_grid(spec: str) -> np.ndarray:
    """``start:stop:count`` -> ``count`` equispaced values, both ends included."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:count', got {spec!r}")
    start, stop = parse_real(parts[0]), parse_real(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise ValueError(f"grid count must be an integer, got {parts[2]!r}") from None
    if count < 2:
        raise ValueError("grid needs at least 2 points")
    return np.linspace(start, stop, count)


def parse_log_grid(spec: str) -> np.ndarray:
    """Like :func:`parse_grid` but spaced geometrically; ``log:1e-3:1e3:20``."""
    if not spec.startswith("log:"):
        return parse_grid(spec)
    lin = parse_grid(spec[4:])
    if lin[0] <= 0 or lin[-1] <= 0:
        raise ValueError("log grid needs positive endpoints")
    return np.geomspace(lin[0], lin[-1], len(lin))


def fmt(x: float) -> str:
    return f"{x:.16e}"


@dataclass
class SweepResult:
    """Rows of components along one swept axis, plus provenance."""

    axis: str
    values: np.ndarray
    rows: list[BlochComponents]
    extra: dict[str, np.ndarray] = field(default_factory=dict)  # additional leading columns
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.rows) != len(self.values):
            raise ValueError("row count must equal axis length")

    def column(self, name: str) -> np.ndarray:
        if name == self.axis:
            return np.asarray(self.values)
        if name in self.extra:
            return np.asarray(self.extra[name])
        return np.array([getattr(r, name) for r in self.rows])

    def to_csv(self, *, include_timestamp: bool = False) -> str:
        buf = io.StringIO()
        for key, val in self.metadata.items():
            if key == "timestamp" and not include_timestamp:
                continue
            if key == "config":
                buf.write("# config:\n")
                for line in val.splitlines():
                    buf.write(f"#   {line}\n" if line else "#\n")
            else:
                buf.write(f"# {key}: {val}\n")
        header = [self.axis, *self.extra, *COLUMNS]
        buf.write(",".join(header) + "\n")
        for k, (x, row) in enumerate(zip(self.values, self.rows)):
            cells = [fmt(x), *(fmt(self.extra[e][k]) for e in self.extra), *(fmt(v) for v in row.as_array())]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def config_echo_from_csv(text: str) -> str:
    """Recover the echoed config text from a CSV written by :meth:`SweepResult.to_csv`."""
    out, inside = [], False
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        if line == "# config:":
            inside = True
            continue
        if inside:
            if line.startswith("#   "):
                out.append(line[4:])
            elif line == "#":
                out.append("")
            else:
                inside = False
    return "\n".join(out) + "\n"


def _workers() -> int:
    env = os.environ.get("LOOPBLOCH_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def ordered_map(fn: Callable, items: Sequence) -> list:
    """Map ``fn`` over ``items`` on a worker pool; results come back in input order."""
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(fn, items))


class SweepPointError(RuntimeError):
    def __init__(self, axis, value, cause):
        super().__init__(f"solve failed at {axis}={value!r}: {cause}")
        self.axis, self.value, self.cause = axis, value, cause


def _metadata(config: SchemeConfig, command: str) -> dict[str, str]:
    return {
        "tool": f"loopbloch {__version__}",
        "command": command,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config": format_config(config),
    }


def sweep_phase(config: SchemeConfig, phis: Sequence[float], command: str = "sweep-phase") -> SweepResult:
    """Steady state at every loop phase in ``phis``."""
    phis = np.asarray(phis, dtype=float)

    def one(phi):
        try:
            return solve(config, phi).components
        except Exception as exc:
            raise SweepPointError("phi", float(phi), exc) from exc

    return SweepResult("phi", phis, ordered_map(one, phis.tolist()), metadata=_metadata(config, command))


def config_for_alpha(config: SchemeConfig, alpha: float) -> SchemeConfig:
    """Set gamma42 = gamma43 = alpha (gamma2 + gamma3) / 2, keeping gamma2, gamma3 fixed."""
    if config.kind is not SchemeKind.DIAMOND:
        raise ValueError("alpha sweeps are defined for the diamond scheme")
    half = 0.5 * alpha * (config.gamma2 + config.gamma3)
    return replace(config, gamma42=half, gamma43=half)


def sweep_alpha(config: SchemeConfig, alphas: Sequence[float], phi: float = 0.0,
                command: str = "sweep-alpha") -> SweepResult:
    """Steady state versus decay balance at fixed intermediate-state width."""
    alphas = np.asarray(alphas, dtype=float)

    def one(a):
        try:
            return solve(config_for_alpha(config, a), phi).components
        except Exception as exc:
            raise SweepPointError("alpha", float(a), exc) from exc

    return SweepResult("alpha", alphas, ordered_map(one, alphas.tolist()), metadata=_metadata(config, command))


def with_metadata(result: SweepResult, config: SchemeConfig, command: str) -> SweepResult:
    result.metadata = _metadata(config, command)
    return result
