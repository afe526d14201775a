"""Flat key = value run configuration.

Lines hold one `key = value` pair each; `#` starts a comment.  List-valued
keys accept comma-separated values or the inclusive range form
`start:stop:count`.  Defaults follow the benchmark parameter set: hopping 1,
coupling 0.2, inverse temperature 3, zero chemical potential, and a
retention grid of 128 points that stops one step short of full retention
(where the efficiency ratio is singular); set include_eta_one to add the
endpoint back.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .model import BathSpec, SystemSpec
from .sweeps import SweepGrid

DEFAULT_ETA_GRID = tuple(i / 128 for i in range(128))


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    n_sites: int = 400
    hopping: float = 1.0
    coupling: float = 0.2
    beta: float = 3.0
    omega0: tuple = (0.8,)
    mu: tuple = (0.0,)
    tau: tuple = (0.2,)
    eta: tuple = DEFAULT_ETA_GRID
    include_eta_one: bool = False
    output: str = "stroboreset_out.csv"
    n_workers: int = 1
    power_iter_seed: int = 0
    iter_tol: float = 1e-10
    converge_tol: float = 1e-6
    doublings: int = 1

    def bath_spec(self) -> BathSpec:
        return BathSpec(n_sites=self.n_sites, hopping=self.hopping, coupling=self.coupling)

    def system_spec(self) -> SystemSpec:
        return SystemSpec(omega0=self.omega0[0], beta=self.beta, mu=self.mu[0])

    def sweep_grid(self) -> SweepGrid:
        return SweepGrid(
            tau_values=self.tau,
            eta_values=self.eta,
            mu_values=self.mu,
            omega0_values=self.omega0,
            bath=self.bath_spec(),
            system=self.system_spec(),
        )


_INT_KEYS = {"n_sites", "n_workers", "power_iter_seed", "doublings"}
_FLOAT_KEYS = {"hopping", "coupling", "beta", "iter_tol", "converge_tol"}
_LIST_KEYS = {"omega0", "mu", "tau", "eta"}
_BOOL_KEYS = {"include_eta_one"}
_STR_KEYS = {"output"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _LIST_KEYS | _BOOL_KEYS | _STR_KEYS


def _parse_float(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"malformed number {token!r}", line) from None


def _parse_list(value: str, line: int) -> tuple:
    value = value.strip()
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigError(
                f"range values use start:stop:count, got {value!r}", line
            )
        start = _parse_float(parts[0], line)
        stop = _parse_float(parts[1], line)
        try:
            count = int(parts[2])
        except ValueError:
            raise ConfigError(f"range count must be an integer, got {parts[2]!r}", line) from None
        if count < 1:
            raise ConfigError(f"range count must be >= 1, got {count}", line)
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(_parse_float(tok, line) for tok in value.split(",") if tok.strip())


def _parse_bool(value: str, line: int) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"malformed boolean {value!r}", line)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration, reporting errors with line numbers."""
    overrides: dict = {}
    lines_seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw.strip()!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        if key in _INT_KEYS:
            try:
                overrides[key] = int(value)
            except ValueError:
                raise ConfigError(f"malformed integer {value!r}", lineno) from None
        elif key in _FLOAT_KEYS:
            overrides[key] = _parse_float(value, lineno)
        elif key in _LIST_KEYS:
            parsed = _parse_list(value, lineno)
            if not parsed:
                raise ConfigError(f"empty list for {key!r}", lineno)
            overrides[key] = parsed
        elif key in _BOOL_KEYS:
            overrides[key] = _parse_bool(value, lineno)
        else:
            overrides[key] = value
        lines_seen[key] = lineno
    config = RunConfig(**overrides)
    if config.include_eta_one and (not config.eta or config.eta[-1] < 1.0):
        config = replace(config, eta=config.eta + (1.0,))
    _validate(config, lines_seen)
    return config


def _validate(config: RunConfig, lines_seen: dict) -> None:
    def fail(key: str, message: str):
        raise ConfigError(message, lines_seen.get(key))

    if config.n_sites < 1:
        fail("n_sites", f"n_sites must be >= 1, got {config.n_sites}")
    if not config.hopping > 0.0:
        fail("hopping", f"hopping must be > 0, got {config.hopping}")
    if config.coupling < 0.0:
        fail("coupling", f"coupling must be >= 0, got {config.coupling}")
    if not config.beta > 0.0:
        fail("beta", f"beta must be > 0, got {config.beta}")
    if config.n_workers < 1:
        fail("n_workers", f"n_workers must be >= 1, got {config.n_workers}")
    if config.doublings < 1:
        fail("doublings", f"doublings must be >= 1, got {config.doublings}")
    if not config.iter_tol > 0.0:
        fail("iter_tol", f"iter_tol must be > 0, got {config.iter_tol}")
    if not config.converge_tol > 0.0:
        fail("converge_tol", f"converge_tol must be > 0, got {config.converge_tol}")
    for key, values in (("tau", config.tau), ("eta", config.eta),
                        ("mu", config.mu), ("omega0", config.omega0)):
        arr = np.asarray(values, dtype=float)
        if arr.size > 1 and not np.all(np.diff(arr) > 0.0):
            fail(key, f"{key} values must be strictly increasing")
    if min(config.tau) <= 0.0:
        fail("tau", "tau values must be positive")
    if min(config.eta) < 0.0 or max(config.eta) > 1.0:
        fail("eta", "eta values must lie in [0, 1]")
