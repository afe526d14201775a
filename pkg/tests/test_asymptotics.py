import numpy as np
import pytest

from stroboreset import asymptotics, model, resetmap
from stroboreset.asymptotics import (
    GuideParams,
    guide_coherence,
    guide_coherence_heat,
    guide_params_from_fixed_point,
    guide_spectrum,
    guide_total_coherence,
    guide_weight,
)
from stroboreset.model import BathSpec, SystemSpec


def make_params(eta=0.5, tau=0.05, p_fp=0.45, omega0=0.8, n=9):
    frequencies = np.linspace(-1.8, 1.8, n)
    couplings = 0.1 * np.sin(np.linspace(0.3, np.pi - 0.3, n)).astype(complex)
    occupations = model.fermi(frequencies, beta=3.0, mu=0.0)
    return GuideParams(
        tau=tau,
        eta=eta,
        omega0=omega0,
        p_fp=p_fp,
        frequencies=frequencies,
        couplings=couplings,
        occupations=occupations,
    )


class TestGuideParams:
    def test_rejects_full_retention(self):
        with pytest.raises(ValueError):
            make_params(eta=1.0)

    def test_rejects_nonpositive_tau(self):
        with pytest.raises(ValueError):
            make_params(tau=0.0)


class TestGuideCoherence:
    def test_no_mismatch_no_coherence(self):
        params = make_params()
        k = 3
        matched = GuideParams(
            tau=params.tau,
            eta=params.eta,
            omega0=params.omega0,
            p_fp=float(params.occupations[k]),
            frequencies=params.frequencies,
            couplings=params.couplings,
            occupations=params.occupations,
        )
        assert guide_coherence(matched, k) == 0.0

    def test_erasure_endpoint_vanishes(self):
        params = make_params(eta=0.0)
        assert np.all(guide_coherence(params) == 0.0)

    def test_scalar_and_vector_access_agree(self):
        params = make_params()
        amps = guide_coherence(params)
        assert guide_coherence(params, 4) == amps[4]

    def test_error_shrinks_quadratically(self, small_setup):
        _, system, basis, occ, propagator = small_setup
        errs = []
        for tau in (0.1, 0.05):
            blocks = propagator.blocks(tau)
            fp = resetmap.solve_fixed_point(blocks, 0.5, occ)
            params = guide_params_from_fixed_point(fp, basis, occ, system, tau, 0.5)
            errs.append(np.max(np.abs(fp.state.x - guide_coherence(params))))
        assert 3.0 <= errs[0] / errs[1] <= 5.0


class TestGuideWeight:
    def test_equals_modulus_squared(self):
        params = make_params(eta=0.7, tau=0.08)
        assert np.allclose(
            guide_weight(params), np.abs(guide_coherence(params)) ** 2, atol=1e-18
        )

    def test_resonant_mode_form(self):
        params = make_params()
        k = 4
        resonant = GuideParams(
            tau=params.tau,
            eta=params.eta,
            omega0=float(params.frequencies[k]),
            p_fp=params.p_fp,
            frequencies=params.frequencies,
            couplings=params.couplings,
            occupations=params.occupations,
        )
        mismatch = resonant.p_fp - resonant.occupations[k]
        expected = (
            resonant.eta**2
            * abs(resonant.couplings[k]) ** 2
            * mismatch**2
            * resonant.tau**2
            / (1.0 - resonant.eta) ** 2
        )
        assert guide_weight(resonant, k) == pytest.approx(expected, rel=1e-12)


class TestGuideSpectrum:
    def test_zero_outside_band(self):
        params = make_params()
        bath = BathSpec(n_sites=40)
        system = SystemSpec(omega0=0.8)
        assert guide_spectrum(2.5, params, bath, system) == 0.0
        assert guide_spectrum(-2.0, params, bath, system) == 0.0

    def test_mismatch_node(self):
        # where the Fermi profile crosses p_fp the spectrum has a zero
        params = make_params(p_fp=0.5)
        bath = BathSpec(n_sites=40)
        system = SystemSpec(omega0=0.8, mu=0.0)
        assert guide_spectrum(0.0, params, bath, system) == pytest.approx(0.0, abs=1e-18)
        assert guide_spectrum(0.5, params, bath, system) > 0.0

    def test_vectorized(self):
        params = make_params()
        bath = BathSpec(n_sites=40)
        system = SystemSpec(omega0=0.8)
        omegas = np.linspace(-2.5, 2.5, 11)
        values = guide_spectrum(omegas, params, bath, system)
        assert values.shape == omegas.shape and np.all(values >= 0.0)


class TestGuideTotalCoherence:
    def test_erasure_endpoint(self):
        assert guide_total_coherence(make_params(eta=0.0)) == 0.0

    def test_doubling_tau_quadruples(self):
        small = guide_total_coherence(make_params(tau=0.02))
        large = guide_total_coherence(make_params(tau=0.04))
        assert large == pytest.approx(4.0 * small, rel=1e-12)

    def test_ratio_to_exact_approaches_one(self, small_setup):
        _, system, basis, occ, propagator = small_setup
        ratios = []
        for tau in (0.1, 0.05, 0.025):
            blocks = propagator.blocks(tau)
            fp = resetmap.solve_fixed_point(blocks, 0.3, occ)
            params = guide_params_from_fixed_point(fp, basis, occ, system, tau, 0.3)
            exact = float(np.sum(np.abs(fp.state.x) ** 2))
            ratios.append(exact / guide_total_coherence(params))
        deviations = [abs(r - 1.0) for r in ratios]
        assert deviations[-1] < deviations[0]
        assert deviations[-1] <= 0.05


class TestGuideCoherenceHeat:
    def test_erasure_endpoint(self):
        assert guide_coherence_heat(make_params(eta=0.0)) == 0.0

    def test_vanishes_toward_full_retention(self):
        # once (1-eta)^2 is below the detuning term the guide scales out
        # linearly with the retention deficit, vanishing at the endpoint
        values = [
            abs(guide_coherence_heat(make_params(eta=e)))
            for e in (0.995, 0.9995, 0.99995)
        ]
        assert values[0] > values[1] > values[2]
        assert values[2] == pytest.approx(values[1] / 10.0, rel=0.05)

    def test_tracks_exact_heat_shift(self, small_setup):
        # heat relative to the erasure baseline is the coherence contribution
        from stroboreset.observables import heat_per_reset

        _, system, basis, occ, propagator = small_setup
        tau = 0.025
        blocks = propagator.blocks(tau)
        base = resetmap.solve_fixed_point(blocks, 0.0, occ)
        q0 = heat_per_reset(base.pre_reset_bath, occ, basis.frequencies)
        fp = resetmap.solve_fixed_point(blocks, 0.4, occ)
        q = heat_per_reset(fp.pre_reset_bath, occ, basis.frequencies)
        params = guide_params_from_fixed_point(fp, basis, occ, system, tau, 0.4)
        guide = guide_coherence_heat(params)
        assert (q - q0) == pytest.approx(guide, rel=0.2)
