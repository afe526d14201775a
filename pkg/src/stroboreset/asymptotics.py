"""Closed-form short-interval guides for the fixed-point coherence and heat.

These leading-order formulas are independent cross-checks of the exact
solver, accurate to one more power of the cycle duration than the quantities
themselves.  The fixed-point level occupation entering them is taken from
the exact solver, which isolates the coherence-formula error from the
occupation error.  All guides break down at full retention (eta = 1), where
the leading denominator vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import BathBasis, BathSpec, SystemSpec, fermi, spectral_density
from .resetmap import FixedPointResult


@dataclass(frozen=True)
class GuideParams:
    """Inputs shared by every guide formula at one operating point."""

    tau: float
    eta: float
    omega0: float
    p_fp: float
    frequencies: np.ndarray
    couplings: np.ndarray
    occupations: np.ndarray

    def __post_init__(self):
        if not 0.0 <= self.eta < 1.0:
            raise ValueError(f"guides require eta in [0, 1), got {self.eta}")
        if not self.tau > 0.0:
            raise ValueError(f"tau must be > 0, got {self.tau}")


def guide_params_from_fixed_point(
    fp: FixedPointResult,
    basis: BathBasis,
    occupations: np.ndarray,
    system: SystemSpec,
    tau: float,
    eta: float,
) -> GuideParams:
    return GuideParams(
        tau=tau,
        eta=eta,
        omega0=system.omega0,
        p_fp=fp.state.p,
        frequencies=basis.frequencies,
        couplings=basis.couplings,
        occupations=occupations,
    )


def _denominator(params: GuideParams):
    detuning = params.omega0 - params.frequencies
    return (1.0 - params.eta) + 1j * params.eta * detuning * params.tau


def guide_coherence(params: GuideParams, k: int | None = None):
    """Leading-order fixed-point coherence amplitude per mode.

    i eta g_k (p_fp - n_k) tau / [(1 - eta) + i eta (omega0 - omega_k) tau];
    returns the full mode array when k is None.
    """
    amps = (
        1j
        * params.eta
        * params.couplings
        * (params.p_fp - params.occupations)
        * params.tau
        / _denominator(params)
    )
    return amps if k is None else complex(amps[k])


def guide_weight(params: GuideParams, k: int | None = None):
    """Leading-order |coherence|^2 per mode (modulus of guide_coherence)."""
    detuning = params.omega0 - params.frequencies
    mismatch = params.p_fp - params.occupations
    numer = (params.eta * np.abs(params.couplings) * mismatch * params.tau) ** 2
    denom = (1.0 - params.eta) ** 2 + (params.eta * detuning * params.tau) ** 2
    weights = numer / denom
    return weights if k is None else float(weights[k])


def guide_spectrum(omega, params: GuideParams, bath: BathSpec, system: SystemSpec):
    """Continuum guide for the coherence spectrum against frequency.

    Replaces the discrete mode weights by the analytic spectral density and
    the Fermi profile; vanishes outside the bath band.
    """
    omega = np.asarray(omega, dtype=float)
    mismatch = params.p_fp - fermi(omega, system.beta, system.mu)
    numer = params.eta**2 * params.tau**2 * spectral_density(omega, bath) * mismatch**2
    denom = (1.0 - params.eta) ** 2 + params.eta**2 * (params.omega0 - omega) ** 2 * params.tau**2
    out = numer / denom
    if out.ndim == 0:
        return float(out)
    return out


def guide_total_coherence(params: GuideParams) -> float:
    """Leading small-interval total coherence: quadratic in tau.

    (eta tau / (1 - eta))^2 sum_k |g_k|^2 (p_fp - n_k)^2; keeps only the
    direct-loss denominator, so it is the tau -> 0 limit of summing
    guide_weight.
    """
    mismatch = params.p_fp - params.occupations
    prefactor = (params.eta * params.tau / (1.0 - params.eta)) ** 2
    return float(prefactor * np.sum(np.abs(params.couplings) ** 2 * mismatch**2))


def guide_coherence_heat(params: GuideParams) -> float:
    """Leading coherence-induced contribution to the heat per reset.

    tau^2 sum_k omega_k 2 eta (1 - eta) |g_k|^2 (p_fp - n_k) /
    [(1 - eta)^2 + eta^2 (omega0 - omega_k)^2 tau^2]; vanishes at both
    endpoints through the eta (1 - eta) factor.
    """
    detuning = params.omega0 - params.frequencies
    mismatch = params.p_fp - params.occupations
    denom = (1.0 - params.eta) ** 2 + (params.eta * detuning * params.tau) ** 2
    terms = (
        params.frequencies
        * 2.0
        * params.eta
        * (1.0 - params.eta)
        * np.abs(params.couplings) ** 2
        * mismatch
        / denom
    )
    return float(params.tau**2 * np.sum(terms))
