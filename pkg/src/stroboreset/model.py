"""Single fermionic level coupled to a finite open tight-binding chain.

Builds the one-particle Hamiltonian, the bath eigenbasis (standing waves of
the open chain), the thermal reference occupations of the bath, and the
analytic semicircular spectral density.  Energies are quoted in units of the
chain hopping; the defaults used throughout are hopping 1, level-chain
coupling 0.2 and inverse temperature 3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from . import linalg


@dataclass(frozen=True)
class BathSpec:
    """Finite open-chain stand-in for the semi-infinite bath.

    n_sites is the truncation length; results must be converged with respect
    to it (see sweeps.convergence_study).  coupling is the level-to-first-site
    hopping amplitude.
    """

    n_sites: int
    hopping: float = 1.0
    coupling: float = 0.2

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        if not self.hopping > 0.0:
            raise ValueError(f"hopping must be > 0, got {self.hopping}")
        if self.coupling < 0.0:
            raise ValueError(f"coupling must be >= 0, got {self.coupling}")


@dataclass(frozen=True)
class SystemSpec:
    """Level energy plus the thermodynamic parameters of the reset target."""

    omega0: float
    beta: float = 3.0
    mu: float = 0.0

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValueError(f"beta must be > 0, got {self.beta}")


@dataclass(frozen=True)
class BathBasis:
    """Eigenmodes of the truncated chain.

    frequencies are ascending; couplings[k] is the level-to-mode-k amplitude;
    transform maps site coordinates to mode coordinates (columns are the
    normalized eigenvectors, global sign fixed so the first-site component is
    non-negative, which makes the couplings deterministic).
    """

    frequencies: np.ndarray
    couplings: np.ndarray
    transform: np.ndarray


def bath_block(bath: BathSpec) -> np.ndarray:
    """Tridiagonal chain Hamiltonian block, nearest-neighbor hopping -J."""
    n = bath.n_sites
    block = np.zeros((n, n))
    idx = np.arange(n - 1)
    block[idx, idx + 1] = -bath.hopping
    block[idx + 1, idx] = -bath.hopping
    return block


def build_hamiltonian(bath: BathSpec, system: SystemSpec) -> np.ndarray:
    """One-particle Hamiltonian in the site basis: level at index 0, chain after.

    Exactly Hermitian by construction (real symmetric).
    """
    n = bath.n_sites
    m = np.zeros((1 + n, 1 + n))
    m[0, 0] = system.omega0
    m[0, 1] = m[1, 0] = bath.coupling
    m[1:, 1:] = bath_block(bath)
    return m


def bath_basis(bath: BathSpec) -> BathBasis:
    """Diagonalize the chain block numerically and fix the mode gauge.

    Numerical diagonalization keeps the pipeline generic for other bath
    blocks; the analytic standing-wave formulas below serve as a free exact
    cross-check in the tests.
    """
    eigenvalues, eigenvectors = linalg.eig_hermitian(bath_block(bath))
    signs = np.where(eigenvectors[0, :] < 0.0, -1.0, 1.0)
    eigenvectors = eigenvectors * signs
    couplings = bath.coupling * eigenvectors[0, :].copy()
    return BathBasis(eigenvalues, couplings.astype(complex), eigenvectors)


def analytic_bath_frequencies(bath: BathSpec) -> np.ndarray:
    """Closed-form open-chain spectrum -2J cos(m pi/(N+1)), ascending in m."""
    m = np.arange(1, bath.n_sites + 1)
    return -2.0 * bath.hopping * np.cos(m * np.pi / (bath.n_sites + 1))


def analytic_bath_couplings(bath: BathSpec) -> np.ndarray:
    """Closed-form couplings t_c sqrt(2/(N+1)) sin(m pi/(N+1))."""
    n = bath.n_sites
    m = np.arange(1, n + 1)
    return bath.coupling * np.sqrt(2.0 / (n + 1)) * np.sin(m * np.pi / (n + 1))


def fermi(omega, beta: float, mu: float):
    """Fermi-Dirac occupation, overflow-safe for any beta*(omega-mu)."""
    return expit(-beta * (np.asarray(omega, dtype=float) - mu))


def reference_state(basis: BathBasis, system: SystemSpec) -> np.ndarray:
    """Thermal reference occupations of the bath modes, diagonal in the mode basis."""
    return fermi(basis.frequencies, system.beta, system.mu)


def hamiltonian_in_mode_basis(bath: BathSpec, system: SystemSpec, basis: BathBasis | None = None):
    """Hamiltonian rotated so the bath block is diagonal: arrow form.

    Entry (0,0) is the level energy, the border row/column carries the mode
    couplings, and the bath block is diag(frequencies).  All reset-map work
    happens in this basis, where the reference bath state is diagonal and the
    coherence spectrum is read off directly.
    """
    if basis is None:
        basis = bath_basis(bath)
    n = bath.n_sites
    m = np.zeros((1 + n, 1 + n))
    m[0, 0] = system.omega0
    m[0, 1:] = basis.couplings.real
    m[1:, 0] = basis.couplings.real
    m[1:, 1:] = np.diag(basis.frequencies)
    return m, basis


def spectral_density(omega, bath: BathSpec):
    """Semicircular coupling-weighted mode density; zero outside the band."""
    omega = np.asarray(omega, dtype=float)
    j = bath.hopping
    band = 4.0 * j * j - omega * omega
    out = np.where(
        band > 0.0,
        bath.coupling**2 / (2.0 * np.pi * j * j) * np.sqrt(np.maximum(band, 0.0)),
        0.0,
    )
    if out.ndim == 0:
        return float(out)
    return out
