"""
Command-line interface.

Subcommands::

    loopbloch steady      --config PATH [--phi X]           [--out PATH]
    loopbloch sweep-phase --config PATH --grid a:b:n        [--out PATH]
    loopbloch sweep-alpha --config PATH --grid [log:]a:b:n  [--out PATH]
    loopbloch evolve      --config PATH --t-end T [--rho0 SPEC] [--tol TOL] [--samples N] [--out PATH]
    loopbloch doppler     --config PATH --width W [--nodes N] [--rule hermite|trapezoid] [--phi X] [--out PATH]
    loopbloch validate    [--omega-grid ...] [--phi-grid ...] [--alpha-grid ...]

Exit codes: 0 success, 1 check or solver failure, 2 no steady state
(multiphoton detuning dw != 0), 3 malformed input (config file, grid,
or state spec). ``LOOPBLOCH_THREADS`` caps the sweep worker pool.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .configfile import load_config, parse_real
from .core import basis_state, bloch_components, projector, superposition_14, superposition_23
from .dynamics import evolve
from .ensemble import ThermalSpec, doppler_average
from .errors import ConfigError, IntegrationError, NonUniqueSteadyState, NoSteadyState
from .scheme import phase_at, wrap_angle
from .steady import certify, solve
from .sweeps import SweepPointError, SweepResult, parse_grid, parse_log_grid, sweep_alpha, sweep_phase, with_metadata
from .validation import DEFAULT_ALPHAS, DEFAULT_OMEGAS, DEFAULT_PHIS, report, run_validation

EXIT_OK, EXIT_FAIL, EXIT_NO_STEADY, EXIT_PARSE = 0, 1, 2, 3

# coherences that must vanish at phi = 2 n pi for a symmetric resonant drive
_EVEN_PHASE_ZEROS = ("u12", "u13", "u24", "u34t", "v14", "v23")

_STATE_RE = re.compile(r"^(?:psi|ψ|Ψ)_?(14|23)\s*\((.*)\)$", re.IGNORECASE)


def parse_state(spec: str) -> np.ndarray:
    """Initial density matrix from ``1``..``4``, ``|k>``, ``psi14(theta)`` or ``psi23(theta)``."""
    s = spec.strip()
    bare = s.strip("|>⟩ ")
    if bare in ("1", "2", "3", "4"):
        return np.array(projector(basis_state(int(bare))))
    m = _STATE_RE.match(bare)
    if m:
        theta = parse_real(m.group(2))
        psi = superposition_14(theta) if m.group(1) == "14" else superposition_23(theta)
        return np.array(projector(psi))
    raise ValueError(f"unrecognized state {spec!r} (use 1..4, |k>, psi14(theta) or psi23(theta))")


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _command_line(args) -> str:
    return " ".join(getattr(args, "argv", []))


def cmd_steady(args) -> int:
    config = load_config(args.config)
    phi = parse_real(args.phi) if args.phi is not None else phase_at(config, 0.0, config.z)
    result = solve(config, phi)
    sweep = with_metadata(SweepResult("phi", np.array([phi]), [result.components]), config, _command_line(args))
    _emit(sweep.to_csv(include_timestamp=args.timestamp), args.out)
    print(certify(result), file=sys.stderr)
    return EXIT_OK


def cmd_sweep_phase(args) -> int:
    config = load_config(args.config)
    result = sweep_phase(config, parse_grid(args.grid), command=_command_line(args))
    _emit(result.to_csv(include_timestamp=args.timestamp), args.out)
    return EXIT_OK


def cmd_sweep_alpha(args) -> int:
    config = load_config(args.config)
    if abs(wrap_angle(config.dchi)) > 1e-12:
        print(f"note: loop phase forced to 0 (config has dchi={config.dchi!r})", file=sys.stderr)
    alphas = parse_log_grid(args.grid)
    if np.any(alphas <= 0):
        raise ValueError("alpha grid must be positive")
    result = sweep_alpha(config, alphas, phi=0.0, command=_command_line(args))
    _emit(result.to_csv(include_timestamp=args.timestamp), args.out)
    worst = max(abs(getattr(r, n)) for r in result.rows for n in _EVEN_PHASE_ZEROS)
    if worst >= 1e-10:
        print(f"check failed: coherences expected to vanish reach {worst:.3e} (limit 1e-10)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_evolve(args) -> int:
    config = load_config(args.config)
    rho0 = parse_state(args.rho0)
    traj = evolve(rho0, config, args.t_end, args.tol, n_samples=args.samples)
    rows = [bloch_components(rho, phi) for rho, phi in zip(traj.states, traj.phase_trace)]
    sweep = SweepResult("t", traj.times, rows, extra={"phi": traj.phase_trace})
    with_metadata(sweep, config, _command_line(args))
    _emit(sweep.to_csv(include_timestamp=args.timestamp), args.out)
    if traj.trace_drift > 1e-8:
        print(f"warning: trace drift {traj.trace_drift:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_doppler(args) -> int:
    config = load_config(args.config)
    phi = parse_real(args.phi) if args.phi is not None else phase_at(config, 0.0, config.z)
    spec = ThermalSpec(width=parse_real(args.width), nodes=args.nodes, rule=args.rule)
    comps = doppler_average(config, phi, spec)
    sweep = SweepResult("width", np.array([spec.width]), [comps], extra={"phi": np.array([phi])})
    with_metadata(sweep, config, _command_line(args))
    _emit(sweep.to_csv(include_timestamp=args.timestamp), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    omegas = parse_grid(args.omega_grid) if args.omega_grid else DEFAULT_OMEGAS
    phis = parse_grid(args.phi_grid) if args.phi_grid else DEFAULT_PHIS
    alphas = parse_log_grid(args.alpha_grid) if args.alpha_grid else DEFAULT_ALPHAS
    rep = report(run_validation(omegas, phis, alphas))
    _emit(json.dumps(rep, indent=2) + "\n", args.out)
    for check in rep["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] {check['name']}: max error {check['max_error']:.3e} "
              f"(tol {check['tolerance']:g}, {check['points']} points)", file=sys.stderr)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loopbloch", description="Closed-loop four-level Bloch equation solver")
    parser.add_argument("--version", action="version", version=f"loopbloch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, metavar="PATH", help="scheme configuration file")
        p.add_argument("--out", metavar="PATH", default=None, help="output file (default: stdout)")
        p.add_argument("--timestamp", action="store_true", help="add a timestamp line to the CSV metadata")

    p = sub.add_parser("steady", help="single steady state with certification report")
    common(p)
    p.add_argument("--phi", help="loop phase in radians (default: from the [phase] section)")
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("sweep-phase", help="steady state versus loop phase")
    common(p)
    p.add_argument("--grid", required=True, help="phase grid start:stop:count, e.g. 0:2pi:81")
    p.set_defaults(func=cmd_sweep_phase)

    p = sub.add_parser("sweep-alpha", help="steady state at phi=0 versus decay balance alpha")
    common(p)
    p.add_argument("--grid", required=True, help="alpha grid start:stop:count or log:start:stop:count")
    p.set_defaults(func=cmd_sweep_alpha)

    p = sub.add_parser("evolve", help="time series from an initial state")
    common(p)
    p.add_argument("--rho0", default="1", help="initial state: 1..4, |k>, psi14(theta), psi23(theta)")
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("doppler", help="thermally averaged steady state")
    common(p)
    p.add_argument("--phi")
    p.add_argument("--width", required=True, help="standard deviation of the Doppler shift")
    p.add_argument("--nodes", type=int, default=31)
    p.add_argument("--rule", choices=("hermite", "trapezoid"), default="hermite")
    p.set_defaults(func=cmd_doppler)

    p = sub.add_parser("validate", help="run the closed-form consistency checks")
    common(p, config=False)
    p.add_argument("--omega-grid")
    p.add_argument("--phi-grid")
    p.add_argument("--alpha-grid")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoSteadyState as exc:
        print(f"no steady state: {exc}", file=sys.stderr)
        return EXIT_NO_STEADY
    except SweepPointError as exc:
        if isinstance(exc.cause, NoSteadyState):
            print(f"no steady state: {exc.cause}", file=sys.stderr)
            return EXIT_NO_STEADY
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NonUniqueSteadyState, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
