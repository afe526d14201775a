"""Self-contained validation suite behind the `validate` subcommand.

Runs fast versions of the oracle and invariant checks that gate a build:
propagator unitarity, the closed-form chain spectrum, dense-conjugation
equivalence of the cycle map, direct-versus-iterated fixed points, endpoint
protocol equivalence, the thermodynamic identities and a serialization
round-trip.  Each check prints one pass/fail line; the suite fails if any
check does.
"""

from __future__ import annotations

import sys
from dataclasses import replace

import numpy as np

from . import asymptotics, csvio, linalg, model, observables, resetmap
from .model import BathSpec, SystemSpec


def _full_cycle_oracle(state, u_full, eta, occupations):
    """Dense conjugate-and-overwrite reference for one cycle."""
    full = state.assemble()
    evolved = u_full @ full @ u_full.conj().T
    out = resetmap.BlockedSPDM.from_full(evolved)
    out.x = eta * out.x
    out.y = eta * out.y
    out.bath = np.diag(occupations).astype(complex)
    return out


def run_validation(stream=sys.stderr) -> bool:
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, passed: bool, detail: str = ""):
        checks.append((name, passed, detail))

    bath = BathSpec(n_sites=60)
    system = SystemSpec(omega0=0.8)
    basis = model.bath_basis(bath)
    occupations = model.reference_state(basis, system)
    hamiltonian, _ = model.hamiltonian_in_mode_basis(bath, system, basis)
    propagator = resetmap.CyclePropagator(hamiltonian)

    # propagator unitarity across the working tau range
    worst = 0.0
    for tau in (0.02, 0.2, 0.8, 2.0):
        u_full = propagator.full(tau)
        worst = max(worst, linalg.max_abs(u_full.conj().T @ u_full - np.eye(u_full.shape[0])))
    record("propagator unitarity", worst <= 1e-12, f"max deviation {worst:.2e}")

    # chain spectrum and couplings against the closed forms
    freq_dev = linalg.max_abs(basis.frequencies - model.analytic_bath_frequencies(bath))
    coup_dev = linalg.max_abs(basis.couplings.real - model.analytic_bath_couplings(bath))
    record("chain spectrum closed form", freq_dev <= 1e-10, f"max deviation {freq_dev:.2e}")
    record("chain couplings closed form", coup_dev <= 1e-10, f"max deviation {coup_dev:.2e}")
    sum_rule = abs(float(np.sum(np.abs(basis.couplings) ** 2)) - bath.coupling**2)
    record("coupling sum rule", sum_rule <= 1e-12, f"deviation {sum_rule:.2e}")

    # cycle map against the dense conjugation oracle
    tau, eta = 0.3, 0.7
    blocks = propagator.blocks(tau)
    u_full = propagator.full(tau)
    state = resetmap.post_reset_state(0.9, occupations)
    worst = 0.0
    for _ in range(30):
        fast = resetmap.one_cycle(state, blocks, eta, occupations)
        dense = _full_cycle_oracle(state, u_full, eta, occupations)
        worst = max(
            worst,
            abs(fast.p - dense.p),
            linalg.max_abs(fast.x - dense.x),
            linalg.max_abs(fast.y - dense.y),
        )
        state = fast
    record("cycle map vs dense conjugation", worst <= 1e-11, f"max deviation {worst:.2e}")

    # affine form reproduces the component map on a random state
    rng = np.random.default_rng(7)
    probe = resetmap.BlockedSPDM(
        p=0.35,
        x=0.01 * (rng.standard_normal(bath.n_sites) + 1j * rng.standard_normal(bath.n_sites)),
        y=np.zeros(bath.n_sites, dtype=complex),
        bath=np.diag(occupations).astype(complex),
    )
    probe.y = probe.x.conj()
    affine = resetmap.assemble_affine(blocks, eta, occupations)
    via_affine = affine.a @ resetmap.kept_vector(probe) + affine.b
    via_map = resetmap.kept_vector(resetmap.one_cycle(probe, blocks, eta, occupations))
    affine_dev = linalg.max_abs(via_affine - via_map)
    record("affine form consistency", affine_dev <= 1e-12, f"max deviation {affine_dev:.2e}")

    # direct and iterated fixed points agree
    fp_direct = resetmap.solve_fixed_point(blocks, eta, occupations)
    fp_iter = resetmap.fixed_point_iterative(
        blocks, eta, occupations, tol=1e-12, max_cycles=200_000
    )
    fp_dev = linalg.max_abs(
        resetmap.kept_vector(fp_direct.state) - resetmap.kept_vector(fp_iter.state)
    )
    record("direct vs iterated fixed point", fp_dev <= 1e-8, f"max deviation {fp_dev:.2e}")

    # endpoint channels: full erasure kills coherence, full retention keeps it
    fp_erase = resetmap.solve_fixed_point(blocks, 0.0, occupations)
    erased = linalg.max_abs(fp_erase.state.x)
    record("erasure endpoint kills coherence", erased == 0.0, f"|x|_max {erased:.2e}")
    fp_keep = resetmap.solve_fixed_point(blocks, 1.0, occupations)
    q_keep = observables.heat_per_reset(fp_keep.pre_reset_bath, occupations, basis.frequencies)
    record("full-retention heat vanishes", abs(q_keep) <= 1e-8, f"|Q| {abs(q_keep):.2e}")

    # thermodynamic identities at a generic point
    row = observables.observables_row(fp_direct, basis, occupations, system, tau, eta)
    record("particle transfer vanishes", abs(row.dn_e) <= 1e-9, f"|dN| {abs(row.dn_e):.2e}")
    residual = observables.entropy_decomposition_residual(
        fp_direct.pre_reset_bath, occupations, system, basis.frequencies
    )
    bound = 1e-8 * max(1.0, row.sigma_reset)
    record("entropy decomposition", residual <= bound, f"residual {residual:.2e}")
    record("entropy production sign", row.sigma_reset >= -1e-10, f"sigma {row.sigma_reset:.2e}")

    # small-interval guide tracks the exact coherence at leading order
    guide_sys = replace(system, omega0=0.8)
    errs = []
    for tau_small in (0.1, 0.05):
        blk = propagator.blocks(tau_small)
        fp = resetmap.solve_fixed_point(blk, 0.5, occupations)
        params = asymptotics.guide_params_from_fixed_point(
            fp, basis, occupations, guide_sys, tau_small, 0.5
        )
        errs.append(linalg.max_abs(fp.state.x - asymptotics.guide_coherence(params)))
    factor = errs[0] / errs[1]
    record("guide order of accuracy", 3.0 <= factor <= 5.0, f"halving factor {factor:.2f}")

    # serialization round-trip
    text = csvio.serialize_records([row])
    back = csvio.parse_records(text)[0]
    roundtrip = back == row
    record("CSV round-trip", roundtrip, "bit-exact" if roundtrip else "mismatch")

    all_passed = all(passed for _, passed, _ in checks)
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        print(f"[{status}] {name}: {detail}", file=stream)
    print(
        f"validation {'passed' if all_passed else 'FAILED'} "
        f"({sum(p for _, p, _ in checks)}/{len(checks)} checks)",
        file=stream,
    )
    return all_passed
