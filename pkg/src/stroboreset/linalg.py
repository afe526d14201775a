"""Dense complex matrix kernels shared by every other module.

All tolerances are relative to the max-absolute-entry scale of the operands,
since observables downstream span several orders of magnitude.  Storage is
dense complex128 throughout; dimensions stay small enough (<= ~1600) that
no sparsity is worth exploiting.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg import lapack as _lapack

HERMITICITY_RTOL = 1e-12
CONDITION_CAP = 1e12
RESIDUAL_RTOL = 1e-10
# dense non-Hermitian eigensolve is affordable and trustworthy up to here;
# beyond it we switch to restarted power iteration
DENSE_EIG_MAX_DIM = 1200
POWER_ITER_MAX = 10_000
POWER_ITER_TOL = 1e-9
POWER_ITER_RESTARTS = 3


class NotHermitianError(ValueError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class SpectralDomainError(ValueError):
    """An eigenvalue fell outside the domain of the requested scalar function."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class SingularMatrixError(np.linalg.LinAlgError):
    """Linear system is singular or numerically too ill-conditioned to trust."""

    def __init__(self, message: str, condition_estimate: float):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class PowerIterationError(RuntimeError):
    """Power iteration failed to settle; carries the best estimate found."""

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary; column k pairs with eigenvalues[k]


def max_abs(m: np.ndarray) -> float:
    """Max absolute entry, the scale used for all relative tolerances."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def check_hermitian(m: np.ndarray, rtol: float = HERMITICITY_RTOL) -> None:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
    scale = max(max_abs(m), np.finfo(float).tiny)
    deviation = max_abs(m - m.conj().T)
    if deviation > rtol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: |m - m^dag|_max = {deviation:.3e} "
            f"exceeds {rtol:.1e} * scale ({scale:.3e})"
        )


def eig_hermitian(m: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    check_hermitian(m)
    eigenvalues, eigenvectors = np.linalg.eigh(m)
    return EigenDecomposition(eigenvalues, eigenvectors)


def expm_i(m: np.ndarray, t: float) -> np.ndarray:
    """exp(-i m t) for Hermitian m, via eigendecomposition.  Result is unitary."""
    eigenvalues, eigenvectors = eig_hermitian(m)
    phases = np.exp(-1j * eigenvalues * t)
    return (eigenvectors * phases) @ eigenvectors.conj().T


def spectral_function(m: np.ndarray, f: Callable[[float], float]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum.

    Raises SpectralDomainError naming the offending eigenvalue if f produces
    a non-finite value.  Callers clamp eigenvalues into the domain first where
    boundary values are physical (see gaussian entropy clamping).
    """
    eigenvalues, eigenvectors = eig_hermitian(m)
    with np.errstate(invalid="ignore", divide="ignore"):
        mapped = np.array([f(x) for x in eigenvalues], dtype=float)
    bad = np.flatnonzero(~np.isfinite(mapped))
    if bad.size:
        k = int(bad[0])
        raise SpectralDomainError(
            f"eigenvalue {eigenvalues[k]!r} is outside the domain of the "
            f"spectral function (f returned {mapped[k]!r})",
            eigenvalue=float(eigenvalues[k]),
        )
    return (eigenvectors * mapped) @ eigenvectors.conj().T


def _power_iteration_radius(m: np.ndarray, tol: float, seed: int) -> float:
    """Largest eigenvalue modulus by normalized power iteration with restarts."""
    rng = np.random.default_rng(seed)
    n = m.shape[0]
    best = 0.0
    converged = False
    for _ in range(POWER_ITER_RESTARTS):
        vec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vec /= np.linalg.norm(vec)
        estimate = 0.0
        for _ in range(POWER_ITER_MAX):
            nxt = m @ vec
            norm = np.linalg.norm(nxt)
            if norm == 0.0:
                estimate = 0.0
                converged = True
                break
            vec = nxt / norm
            if abs(norm - estimate) < tol * max(1.0, norm):
                estimate = norm
                converged = True
                break
            estimate = norm
        best = max(best, estimate)
        if converged:
            break
    if not converged:
        raise PowerIterationError(
            f"power iteration did not converge to tol={tol:.1e} within "
            f"{POWER_ITER_MAX} iterations (best estimate {best:.12e})",
            best_estimate=best,
        )
    return float(best)


def spectral_radius(m: np.ndarray, tol: float = POWER_ITER_TOL, seed: int = 0) -> float:
    """Largest eigenvalue modulus of a general square complex matrix.

    Dense eigensolve below DENSE_EIG_MAX_DIM (the fixed-point existence check
    must be trustworthy), seeded power iteration above.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] <= DENSE_EIG_MAX_DIM:
        return float(np.max(np.abs(np.linalg.eigvals(m))))
    return _power_iteration_radius(m, tol, seed)


class FactoredSystem:
    """LU factorization of a square system, reusable across right-hand sides.

    Amortizes the factor/condition work when many offset vectors are solved
    against the same matrix (e.g. a chemical-potential sweep at fixed map).
    """

    def __init__(self, a: np.ndarray):
        a = np.ascontiguousarray(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        self.a = a
        self._norm1 = float(np.linalg.norm(a, 1))
        try:
            self._lu, self._piv = lu_factor(a)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(f"singular matrix: {exc}", np.inf) from exc
        rcond, info = _lapack.zgecon(self._lu, self._norm1, norm="1")
        if info != 0:
            raise SingularMatrixError(
                f"condition estimation failed (LAPACK info={info})", np.inf
            )
        self.condition_estimate = 1.0 / rcond if rcond > 0.0 else np.inf
        if not np.isfinite(self.condition_estimate) or self.condition_estimate > CONDITION_CAP:
            raise SingularMatrixError(
                f"matrix condition estimate {self.condition_estimate:.3e} exceeds "
                f"cap {CONDITION_CAP:.1e}",
                self.condition_estimate,
            )

    def solve(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=complex)
        x = lu_solve((self._lu, self._piv), b)
        residual = float(np.max(np.abs(self.a @ x - b)))
        bound = RESIDUAL_RTOL * (
            float(np.linalg.norm(self.a, np.inf)) * float(np.max(np.abs(x), initial=0.0))
            + float(np.max(np.abs(b), initial=0.0))
        )
        if residual > bound:
            raise SingularMatrixError(
                f"solve residual {residual:.3e} exceeds contract bound {bound:.3e}",
                self.condition_estimate,
            )
        return x


def solve_linear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a x = b with a condition-estimate guard and a residual contract."""
    return FactoredSystem(a).solve(b)
