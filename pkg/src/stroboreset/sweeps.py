"""Parameter-grid drivers and derived curves.

run_sweep walks the (omega0, tau, eta, mu) product in a fixed deterministic
order.  The expensive pieces are shared where the map allows it: the
Hamiltonian eigendecomposition per level position, the propagator blocks per
cycle duration, and the map matrix (plus its spectral radius and LU factors)
per retention value -- the chemical potential only enters the affine offset,
so mu points at a fixed map cost one cheap solve each.

Rows whose fixed point cannot be certified are flagged, never dropped.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import linalg, model, resetmap
from .model import BathSpec, SystemSpec
from .observables import ObservableRecord, failed_row, observables_row


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian sweep over cycle duration, retention, filling bias and level."""

    tau_values: tuple
    eta_values: tuple
    mu_values: tuple
    omega0_values: tuple
    bath: BathSpec
    system: SystemSpec  # template; omega0 and mu are overridden per point

    def __post_init__(self):
        for name in ("tau_values", "eta_values", "mu_values", "omega0_values"):
            values = np.asarray(getattr(self, name), dtype=float)
            if values.size == 0:
                raise ValueError(f"{name} must be nonempty")
            if values.size > 1 and not np.all(np.diff(values) > 0.0):
                raise ValueError(f"{name} must be strictly increasing")
        if np.min(self.tau_values) <= 0.0:
            raise ValueError("tau values must be positive")
        eta = np.asarray(self.eta_values, dtype=float)
        if eta.min() < 0.0 or eta.max() > 1.0:
            raise ValueError("eta values must lie in [0, 1]")


@dataclass(frozen=True)
class OperatingPoints:
    """Grid maximizers of the three figures of merit at one cycle duration."""

    tau: float
    eta_max_jq: float
    jq_max: float
    eta_max_cse: float
    cse_max: float
    eta_max_r: float
    r_max: float
    grid_resolution: float


@dataclass(frozen=True)
class ParetoCurve:
    """(retained coherence, heat current) trajectory swept along eta at fixed tau."""

    tau: float
    points: tuple  # ((c_se, j_q), ...) ordered by ascending eta


@dataclass(frozen=True)
class ConvergenceReport:
    """Observable drift under successive doublings of the bath truncation."""

    n_sites: tuple
    c_se: tuple
    j_q: tuple
    sigma_reset: tuple
    rel_changes: tuple
    tol: float
    passed: bool


def _sweep_one_level(
    bath: BathSpec,
    system_template: SystemSpec,
    omega0: float,
    tau_values,
    eta_values,
    mu_values,
    iter_tol: float,
) -> list[ObservableRecord]:
    """All rows for one level position, sharing the propagator across the grid."""
    basis = model.bath_basis(bath)
    system0 = replace(system_template, omega0=omega0)
    hamiltonian, _ = model.hamiltonian_in_mode_basis(bath, system0, basis)
    propagator = resetmap.CyclePropagator(hamiltonian)
    occupations_by_mu = {
        mu: model.fermi(basis.frequencies, system_template.beta, mu) for mu in mu_values
    }
    rows: list[ObservableRecord] = []
    for tau in tau_values:
        blocks = propagator.blocks(tau)
        for eta in eta_values:
            # the map matrix is independent of mu; factor once per eta
            affine_probe = resetmap.assemble_affine(
                blocks, eta, occupations_by_mu[mu_values[0]]
            )
            rho = linalg.spectral_radius(affine_probe.a)
            solver = None
            if rho < 1.0 - resetmap.CONTRACTION_MARGIN:
                try:
                    solver = linalg.FactoredSystem(
                        np.eye(affine_probe.a.shape[0], dtype=complex) - affine_probe.a
                    )
                except linalg.SingularMatrixError:
                    solver = None
            for mu in mu_values:
                system = replace(system_template, omega0=omega0, mu=mu)
                occupations = occupations_by_mu[mu]
                init = resetmap.post_reset_state(
                    float(model.fermi(omega0, system.beta, mu)), occupations
                )
                try:
                    fp = resetmap.solve_fixed_point(
                        blocks,
                        eta,
                        occupations,
                        rho=rho,
                        solver=solver,
                        init=init,
                        iter_tol=iter_tol,
                    )
                except resetmap.ResetMapError:
                    rows.append(failed_row(tau, eta, system, bath.n_sites, rho))
                    continue
                rows.append(
                    observables_row(fp, basis, occupations, system, tau, eta)
                )
    return rows


def run_sweep(grid: SweepGrid, n_workers: int = 1, iter_tol: float = 1e-10) -> list[ObservableRecord]:
    """Evaluate every grid point; rows ordered by (omega0, tau, eta, mu).

    Work is distributed over level positions and cycle durations; parallel
    and serial execution produce identical row sets because assembly is
    order-normalized at the end.
    """
    tau_values = [float(t) for t in grid.tau_values]
    eta_values = [float(e) for e in grid.eta_values]
    mu_values = [float(m) for m in grid.mu_values]
    omega0_values = [float(w) for w in grid.omega0_values]

    tasks = [
        (grid.bath, grid.system, omega0, [tau], eta_values, mu_values, iter_tol)
        for omega0, tau in itertools.product(omega0_values, tau_values)
    ]
    if n_workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            chunks = list(pool.map(_sweep_task, tasks))
    else:
        chunks = [_sweep_task(task) for task in tasks]
    rows = [row for chunk in chunks for row in chunk]
    order = {
        (omega0, tau, eta, mu): i
        for i, (omega0, tau, eta, mu) in enumerate(
            itertools.product(omega0_values, tau_values, eta_values, mu_values)
        )
    }
    rows.sort(key=lambda r: order[(r.omega0, r.tau, r.eta, r.mu)])
    return rows


def _sweep_task(args) -> list[ObservableRecord]:
    return _sweep_one_level(*args)


def operating_points(records: list[ObservableRecord]) -> OperatingPoints:
    """Grid argmax of heat current, retained coherence and efficiency ratio.

    Records must share one cycle duration and carry at least 8 retention
    points.  Ties report the smallest eta.  Rows with the infinite-efficiency
    sentinel are excluded from the ratio argmax unless every row carries it,
    in which case the eta of the largest retained coherence is reported.
    Unconverged rows never win.
    """
    if not records:
        raise ValueError("operating_points needs a nonempty record list")
    taus = {r.tau for r in records}
    if len(taus) != 1:
        raise ValueError(f"records must share one tau, got {sorted(taus)}")
    tau = records[0].tau
    rows = sorted((r for r in records), key=lambda r: r.eta)
    etas = [r.eta for r in rows]
    if len(etas) < 8:
        raise ValueError(f"need at least 8 eta points, got {len(etas)}")
    usable = [r for r in rows if r.converged]
    if not usable:
        raise ValueError("no converged rows to extract operating points from")

    def argmax(values, candidates):
        best = max(values)
        for eta, value in zip((r.eta for r in candidates), values):
            if value == best:
                return eta, value
        raise AssertionError("unreachable")

    eta_jq, jq = argmax([r.j_q for r in usable], usable)
    eta_cse, cse = argmax([r.c_se for r in usable], usable)
    finite_r = [r for r in usable if np.isfinite(r.r_eff)]
    if finite_r:
        eta_r, r_max = argmax([r.r_eff for r in finite_r], finite_r)
    else:
        eta_r, _ = argmax([r.c_se for r in usable], usable)
        r_max = np.inf
    resolution = float(np.min(np.diff(etas))) if len(etas) > 1 else 0.0
    return OperatingPoints(
        tau=tau,
        eta_max_jq=eta_jq,
        jq_max=jq,
        eta_max_cse=eta_cse,
        cse_max=cse,
        eta_max_r=eta_r,
        r_max=r_max,
        grid_resolution=resolution,
    )


def pareto_curve(records: list[ObservableRecord]) -> ParetoCurve:
    """Coherence-versus-heat trajectory along eta; the full arch, unfiltered."""
    if not records:
        raise ValueError("pareto_curve needs a nonempty record list")
    taus = {r.tau for r in records}
    if len(taus) != 1:
        raise ValueError(f"records must share one tau, got {sorted(taus)}")
    rows = sorted(records, key=lambda r: r.eta)
    return ParetoCurve(
        tau=records[0].tau,
        points=tuple((r.c_se, r.j_q) for r in rows),
    )


NOISE_FLOOR = 1e-12


def _relative_change(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    # observables at the numerical noise floor are zero for convergence
    # purposes (a decoupled chain reports j_q ~ 1e-15 of pure rounding)
    if scale <= NOISE_FLOOR:
        return 0.0
    return abs(a - b) / scale


def convergence_study(
    bath: BathSpec,
    system: SystemSpec,
    tau: float,
    eta: float,
    doublings: int = 1,
    tol: float = 1e-6,
) -> ConvergenceReport:
    """Doubling study of the bath truncation at one operating point.

    Re-evaluates (c_se, j_q, sigma_reset) at n_sites, 2 n_sites, ... and
    reports the successive max relative changes; passes when the final
    change is below tol.  Long cycles at short chains fail here because the
    propagator wraps off the far boundary.
    """
    if doublings < 1:
        raise ValueError(f"doublings must be >= 1, got {doublings}")
    sizes = [bath.n_sites * (2**i) for i in range(doublings + 1)]
    c_se, j_q, sigma = [], [], []
    for n in sizes:
        grid = SweepGrid(
            tau_values=(tau,),
            eta_values=(eta,),
            mu_values=(system.mu,),
            omega0_values=(system.omega0,),
            bath=replace(bath, n_sites=n),
            system=system,
        )
        row = run_sweep(grid)[0]
        if not row.converged:
            raise resetmap.ResetMapError(
                f"convergence study point did not converge at n_sites={n}"
            )
        c_se.append(row.c_se)
        j_q.append(row.j_q)
        sigma.append(row.sigma_reset)
    rel_changes = [
        max(
            _relative_change(c_se[i], c_se[i + 1]),
            _relative_change(j_q[i], j_q[i + 1]),
            _relative_change(sigma[i], sigma[i + 1]),
        )
        for i in range(doublings)
    ]
    return ConvergenceReport(
        n_sites=tuple(sizes),
        c_se=tuple(c_se),
        j_q=tuple(j_q),
        sigma_reset=tuple(sigma),
        rel_changes=tuple(rel_changes),
        tol=tol,
        passed=rel_changes[-1] < tol,
    )
