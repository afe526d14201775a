import numpy as np
import pytest
from scipy.integrate import quad

from stroboreset import linalg, model
from stroboreset.model import BathSpec, SystemSpec


class TestSpecs:
    def test_bath_validation(self):
        with pytest.raises(ValueError):
            BathSpec(n_sites=0)
        with pytest.raises(ValueError):
            BathSpec(n_sites=5, hopping=0.0)
        with pytest.raises(ValueError):
            BathSpec(n_sites=5, coupling=-0.1)

    def test_system_validation(self):
        with pytest.raises(ValueError):
            SystemSpec(omega0=0.8, beta=0.0)


class TestBuildHamiltonian:
    def test_single_bath_site(self):
        m = model.build_hamiltonian(BathSpec(n_sites=1), SystemSpec(omega0=0.8))
        assert np.array_equal(m, np.array([[0.8, 0.2], [0.2, 0.0]]))

    def test_decoupled_limit(self):
        m = model.build_hamiltonian(
            BathSpec(n_sites=3, coupling=0.0), SystemSpec(omega0=1.5)
        )
        assert np.all(m[0, 1:] == 0.0) and np.all(m[1:, 0] == 0.0)

    def test_bath_block(self):
        m = model.build_hamiltonian(BathSpec(n_sites=3), SystemSpec(omega0=0.0))
        expected = np.array([[0, -1, 0], [-1, 0, -1], [0, -1, 0]], dtype=float)
        assert np.array_equal(m[1:, 1:], expected)

    def test_exactly_hermitian(self):
        m = model.build_hamiltonian(BathSpec(n_sites=7), SystemSpec(omega0=0.8))
        assert np.array_equal(m, m.T)


class TestBathBasis:
    def test_single_mode(self):
        basis = model.bath_basis(BathSpec(n_sites=1, coupling=0.3))
        assert basis.frequencies[0] == pytest.approx(0.0, abs=1e-14)
        assert basis.couplings[0] == pytest.approx(0.3)

    @pytest.mark.parametrize("n_sites", [5, 50])
    def test_closed_form_spectrum(self, n_sites):
        bath = BathSpec(n_sites=n_sites)
        basis = model.bath_basis(bath)
        assert np.allclose(
            basis.frequencies, model.analytic_bath_frequencies(bath), atol=1e-10
        )
        assert np.allclose(
            basis.couplings.real, model.analytic_bath_couplings(bath), atol=1e-10
        )

    @pytest.mark.parametrize("n_sites", [1, 7, 64])
    def test_coupling_sum_rule(self, n_sites):
        bath = BathSpec(n_sites=n_sites, coupling=0.37)
        basis = model.bath_basis(bath)
        assert np.sum(np.abs(basis.couplings) ** 2) == pytest.approx(
            bath.coupling**2, abs=1e-13
        )

    def test_transform_unitary_and_band_bounded(self):
        bath = BathSpec(n_sites=30)
        basis = model.bath_basis(bath)
        n = bath.n_sites
        assert linalg.max_abs(basis.transform.conj().T @ basis.transform - np.eye(n)) <= 1e-10
        assert np.all(np.abs(basis.frequencies) < 2.0 * bath.hopping)

    def test_matches_site_basis_rotation(self):
        # arrow-form Hamiltonian equals the rotated site-basis Hamiltonian
        bath = BathSpec(n_sites=12)
        system = SystemSpec(omega0=0.8)
        basis = model.bath_basis(bath)
        site = model.build_hamiltonian(bath, system)
        t = np.zeros((13, 13))
        t[0, 0] = 1.0
        t[1:, 1:] = basis.transform
        rotated = t.T @ site @ t
        arrow, _ = model.hamiltonian_in_mode_basis(bath, system, basis)
        assert linalg.max_abs(rotated - arrow) <= 1e-12


class TestReferenceState:
    def test_half_filling_at_band_center(self):
        assert model.fermi(0.0, beta=3.0, mu=0.0) == pytest.approx(0.5)

    def test_zero_temperature_step(self):
        occ = model.fermi(np.array([-1.0, 1.0]), beta=4000.0, mu=0.0)
        assert occ[0] == pytest.approx(1.0, abs=1e-12)
        assert occ[1] == pytest.approx(0.0, abs=1e-12)

    def test_scalar_value(self):
        assert model.fermi(1.0, beta=3.0, mu=0.0) == pytest.approx(
            1.0 / (np.exp(3.0) + 1.0), abs=1e-12
        )

    def test_overflow_safe(self):
        assert np.isfinite(model.fermi(1e6, beta=100.0, mu=0.0))
        assert np.isfinite(model.fermi(-1e6, beta=100.0, mu=0.0))

    def test_monotone_in_frequency(self):
        bath = BathSpec(n_sites=25)
        basis = model.bath_basis(bath)
        occ = model.reference_state(basis, SystemSpec(omega0=0.8, beta=2.0, mu=0.4))
        assert np.all(np.diff(occ) < 0.0)


class TestSpectralDensity:
    def test_band_center_value(self):
        bath = BathSpec(n_sites=10, hopping=1.0, coupling=0.2)
        assert model.spectral_density(0.0, bath) == pytest.approx(0.04 / np.pi)

    @pytest.mark.parametrize("omega", [2.0, -2.0, 2.5, -3.7])
    def test_zero_outside_band_and_at_edges(self, omega):
        bath = BathSpec(n_sites=10)
        assert model.spectral_density(omega, bath) == 0.0

    def test_binned_couplings_match_density(self):
        # mode-sum in a frequency bin approximates the analytic bin integral
        bath = BathSpec(n_sites=600)
        basis = model.bath_basis(bath)
        edges = np.linspace(-2.0, 2.0, 21)
        weights = np.abs(basis.couplings) ** 2
        for lo, hi in zip(edges[:-1], edges[1:]):
            mask = (basis.frequencies >= lo) & (basis.frequencies < hi)
            empirical = float(np.sum(weights[mask]))
            expected, _ = quad(lambda w: model.spectral_density(w, bath), lo, hi)
            assert empirical == pytest.approx(expected, rel=0.08)
