"""Command-line interface: ``rabiduality {verify,evolve,compare,spectrum}``.

Exit codes: 0 success, 1 verification failure, 2 usage/config/I-O error,
3 Fock cutoff too small for the requested run.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .config import ConfigError, RunConfig
from .dynamics import (
    DRIVE_FACTORS,
    Trajectory,
    amplitude_bound,
    bosonic_propagator,
    cat_state,
    coupling_only_propagator,
    effective_fermionic_evolve,
    evolve_spectral,
    quadrature_signal,
    write_columns,
)
from .hilbert import CutoffError, required_cutoff, spin_state
from .model import MODEL_KINDS, build_effective, hamiltonian
from .observables import compare_models, standard_observables
from .symmetry import parity_sectors, verify_algebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CUTOFF = 0, 1, 2, 3

_FLAG_FIELDS = {
    "cutoff": int,
    "omega": float,
    "omega0": float,
    "g": float,
    "t1": float,
    "steps": int,
    "initial": str,
}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output CSV path (default: stdout)")
    for name, typ in _FLAG_FIELDS.items():
        common.add_argument(f"--{name}", type=typ, default=None)
    common.add_argument("--model", default=None,
                        help="model kind, or two comma-separated kinds for compare")
    common.add_argument("--tol", type=float, default=None,
                        help="override every verification tolerance")
    common.add_argument("--fermionic-factor", choices=sorted(DRIVE_FACTORS), default=None)
    common.add_argument("--print-config", action="store_true",
                        help="print the effective configuration and exit")

    parser = argparse.ArgumentParser(prog="rabiduality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="check every symmetry identity")
    sub.add_parser("evolve", parents=[common], help="propagate a state, write observables")
    sub.add_parser("compare", parents=[common], help="fidelity between two models")
    sub.add_parser("spectrum", parents=[common], help="eigenvalues per parity sector")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        data = RunConfig.from_json(text).__dict__.copy()
    for name in _FLAG_FIELDS:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.model is not None:
        data["models"] = args.model
    if args.out is not None:
        data["out"] = args.out
    if args.tol is not None:
        data["tolerance"] = data["exp_tolerance"] = args.tol
    if args.fermionic_factor is not None:
        data["fermionic_factor"] = args.fermionic_factor
    return RunConfig.from_dict(data)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        path = Path(cfg.out)
        with path.open("w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _guard(cfg: RunConfig, model: str) -> None:
    if model in ("coupling", "coupling-closed"):
        bound = cfg.g * max(abs(cfg.t0), abs(cfg.t1))
    else:
        bound = amplitude_bound(cfg.params, max(abs(cfg.t0), abs(cfg.t1)))
    bound += cfgmod.initial_amplitude(cfg.initial)
    if cfg.cutoff < required_cutoff(bound):
        raise CutoffError(bound, cfg.cutoff)


def cmd_verify(cfg: RunConfig) -> int:
    report = verify_algebra(cfg.params, cfg.spec, cfg.tolerance, cfg.exp_tolerance)
    _emit(report.to_csv(), cfg)
    worst = report.worst()
    stream = sys.stdout if cfg.out else sys.stderr
    n_pass = sum(r.passed for r in report)
    print(f"{n_pass}/{len(report)} identities passed; worst residual {worst.residual:.3e} "
          f"({worst.identity}, tol {worst.tolerance:.0e})", file=stream)
    for row in report.failures:
        print(f"FAIL {row.identity}: {row.residual:.3e} > {row.tolerance:.0e}", file=stream)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _evolve_trajectory(cfg: RunConfig, model: str) -> Trajectory:
    params, spec, grid = cfg.params, cfg.spec, cfg.grid
    if model == "effective-fermionic":
        # drive taken from the bosonic track started in the same state
        psi0 = cfgmod.build_initial(cfg.initial, spec)
        boson = evolve_spectral(build_effective(params, spec, "bosonic"), psi0, grid)
        x = quadrature_signal(boson)
        label, _, _ = cfgmod.parse_initial(cfg.initial)
        traj = effective_fermionic_evolve(params, x, spin_state(label), grid,
                                          DRIVE_FACTORS[cfg.fermionic_factor])
        traj.observables = {"x": x, **traj.observables}
        return traj
    if model == "cat":
        if cfg.initial != "e0":
            raise ConfigError("model 'cat' starts from e0 only")
        if params.omega == 0:
            model = "coupling-closed"
        else:
            states = np.array([cat_state(params, spec, t).vec for t in grid.times])
            traj = Trajectory(grid, states)
            traj.observables = standard_observables(traj, spec)
            return traj
    psi0 = cfgmod.build_initial(cfg.initial, spec)
    if model in MODEL_KINDS:
        traj = evolve_spectral(hamiltonian(params, spec, model), psi0, grid)
    elif model == "bosonic-closed" and params.omega > 0:
        traj = Trajectory(grid, np.array([(bosonic_propagator(params, spec, t) @ psi0).vec
                                          for t in grid.times]))
    elif model in ("bosonic-closed", "coupling-closed"):
        # omega = 0 reduces the bosonic Hamiltonian to the coupling-only one
        traj = Trajectory(grid, np.array([(coupling_only_propagator(params.g, spec, t) @ psi0).vec
                                          for t in grid.times]))
    else:
        raise ConfigError(f"unknown model {model!r}")
    traj.observables = standard_observables(traj, spec)
    return traj


def cmd_evolve(cfg: RunConfig) -> int:
    model = cfg.models[0]
    _guard(cfg, model)
    traj = _evolve_trajectory(cfg, model)
    _emit(traj.to_csv(include_states=cfg.include_states), cfg)
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    if len(cfg.models) != 2:
        raise ConfigError("compare needs exactly two model kinds, e.g. --model full,bosonic")
    for m in cfg.models:
        if m not in MODEL_KINDS:
            raise ConfigError(f"compare supports {', '.join(MODEL_KINDS)}; got {m!r}")
        _guard(cfg, m)
    psi0 = cfgmod.build_initial(cfg.initial, cfg.spec)
    curve = compare_models(cfg.params, cfg.spec, psi0, cfg.grid, *cfg.models)
    _emit(curve.to_csv(), cfg)
    stream = sys.stdout if cfg.out else sys.stderr
    print(f"min fidelity {curve.fidelity.min():.17g}", file=stream)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> int:
    model = cfg.models[0]
    if model not in MODEL_KINDS:
        raise ConfigError(f"spectrum supports {', '.join(MODEL_KINDS)}; got {model!r}")
    _guard(cfg, model)
    H = hamiltonian(cfg.params, cfg.spec, model)
    plus, minus, cross = parity_sectors(H, cfg.spec)
    e_plus = np.linalg.eigvalsh(plus.mat)
    e_minus = np.linalg.eigvalsh(minus.mat)
    cols = [
        ("sector", np.concatenate([np.ones_like(e_plus), -np.ones_like(e_minus)])),
        ("k", np.concatenate([np.arange(len(e_plus)), np.arange(len(e_minus))])),
        ("energy", np.concatenate([e_plus, e_minus])),
    ]
    _emit(write_columns(cols), cfg)
    stream = sys.stdout if cfg.out else sys.stderr
    print(f"parity cross-block norm {cross:.3e}", file=stream)
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "evolve": cmd_evolve, "compare": cmd_compare, "spectrum": cmd_spectrum}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = load_config(args)
        if args.print_config:
            print(cfg.to_json())
            return EXIT_OK
        return COMMANDS[args.command](cfg)
    except CutoffError as exc:
        print(f"refusing to run: {exc}", file=sys.stderr)
        print(f"required cutoff: {exc.required}", file=sys.stderr)
        return EXIT_CUTOFF
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
