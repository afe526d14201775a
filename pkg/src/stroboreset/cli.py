"""Command-line entry point.

Subcommands cover the full workflow: single fixed points, grid sweeps,
coherence spectra, operating-point extraction, chemical-potential sweeps,
the bath-truncation convergence study, and the validation suite.  All
diagnostics go to standard error; results are CSV files.

Exit codes: 0 success, 2 configuration error, 3 at least one fixed point
failed to converge (rows are still written, flagged), 4 validation failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import asymptotics, csvio, model, resetmap, sweeps, validate
from .config import ConfigError, RunConfig, parse_config
from .observables import coherence_spectrum

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NOT_CONVERGED = 3
EXIT_VALIDATION = 4

WORKERS_ENV_VAR = "STROBORESET_WORKERS"


def _load_config(args) -> RunConfig:
    if args.config is not None:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config!r}: {exc}")
        config = parse_config(text)
    else:
        config = RunConfig()
    if args.output is not None:
        config = replace(config, output=args.output)
    workers_env = os.environ.get(WORKERS_ENV_VAR)
    if workers_env is not None:
        try:
            n_workers = int(workers_env)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV_VAR} must be an integer, got {workers_env!r}")
        if n_workers < 1:
            raise ConfigError(f"{WORKERS_ENV_VAR} must be >= 1, got {n_workers}")
        config = replace(config, n_workers=n_workers)
    return config


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    print(f"wrote {path}", file=sys.stderr)


def _first_point_config(config: RunConfig) -> RunConfig:
    return replace(
        config,
        tau=(config.tau[0],),
        eta=(config.eta[0],),
        mu=(config.mu[0],),
        omega0=(config.omega0[0],),
    )


def _exit_for(records) -> int:
    return EXIT_OK if all(r.converged for r in records) else EXIT_NOT_CONVERGED


def cmd_fixed_point(config: RunConfig) -> int:
    single = _first_point_config(config)
    records = sweeps.run_sweep(single.sweep_grid(), iter_tol=config.iter_tol)
    _write(config.output, csvio.serialize_records(records))
    return _exit_for(records)


def cmd_sweep(config: RunConfig) -> int:
    records = sweeps.run_sweep(
        config.sweep_grid(), n_workers=config.n_workers, iter_tol=config.iter_tol
    )
    _write(config.output, csvio.serialize_records(records))
    return _exit_for(records)


def cmd_spectrum(config: RunConfig) -> int:
    single = _first_point_config(config)
    tau, eta = single.tau[0], single.eta[0]
    bath = single.bath_spec()
    system = single.system_spec()
    basis = model.bath_basis(bath)
    occupations = model.reference_state(basis, system)
    hamiltonian, _ = model.hamiltonian_in_mode_basis(bath, system, basis)
    blocks = resetmap.CyclePropagator(hamiltonian).blocks(tau)
    init = resetmap.post_reset_state(
        float(model.fermi(system.omega0, system.beta, system.mu)), occupations
    )
    try:
        fp = resetmap.solve_fixed_point(
            blocks, eta, occupations, init=init, iter_tol=config.iter_tol
        )
    except resetmap.ResetMapError as exc:
        print(f"fixed point failed: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    spectrum = coherence_spectrum(fp, basis)
    if eta < 1.0:
        params = asymptotics.guide_params_from_fixed_point(
            fp, basis, occupations, system, tau, eta
        )
        guide = asymptotics.guide_weight(params)
    else:
        guide = np.full(bath.n_sites, np.nan)
    _write(
        config.output,
        csvio.serialize_spectrum(spectrum, basis.couplings, fp.state.x, guide),
    )
    return EXIT_OK


def cmd_operating_points(config: RunConfig) -> int:
    base = replace(config, mu=(config.mu[0],), omega0=(config.omega0[0],))
    points = []
    all_converged = True
    for tau in config.tau:
        grid = replace(base, tau=(tau,)).sweep_grid()
        records = sweeps.run_sweep(grid, n_workers=config.n_workers, iter_tol=config.iter_tol)
        all_converged &= all(r.converged for r in records)
        points.append(sweeps.operating_points(records))
    _write(config.output, csvio.serialize_operating_points(points))
    return EXIT_OK if all_converged else EXIT_NOT_CONVERGED


def cmd_mu_sweep(config: RunConfig) -> int:
    narrowed = replace(config, tau=(config.tau[0],))
    records = sweeps.run_sweep(
        narrowed.sweep_grid(), n_workers=config.n_workers, iter_tol=config.iter_tol
    )
    _write(config.output, csvio.serialize_records(records))
    return _exit_for(records)


def cmd_converge(config: RunConfig) -> int:
    report = sweeps.convergence_study(
        config.bath_spec(),
        config.system_spec(),
        tau=config.tau[0],
        eta=config.eta[0],
        doublings=config.doublings,
        tol=config.converge_tol,
    )
    _write(config.output, csvio.serialize_convergence(report))
    if not report.passed:
        print(
            f"NOT converged: last relative change {report.rel_changes[-1]:.3e} "
            f"exceeds {report.tol:.1e}",
            file=sys.stderr,
        )
        return EXIT_NOT_CONVERGED
    print(
        f"converged: last relative change {report.rel_changes[-1]:.3e} "
        f"within {report.tol:.1e}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_validate(config: RunConfig) -> int:
    return EXIT_OK if validate.run_validation() else EXIT_VALIDATION


_COMMANDS = {
    "fixed-point": cmd_fixed_point,
    "sweep": cmd_sweep,
    "spectrum": cmd_spectrum,
    "operating-points": cmd_operating_points,
    "mu-sweep": cmd_mu_sweep,
    "converge": cmd_converge,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stroboreset",
        description="Exact fixed-point simulator for coherence-selective reset protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="path to a key = value config file")
        cmd.add_argument("--output", help="output CSV path (overrides config)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
