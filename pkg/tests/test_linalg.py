import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stroboreset import linalg


def hermitian_from_seed(seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


class TestEigHermitian:
    def test_scalar(self):
        w, v = linalg.eig_hermitian(np.array([[2.5]]))
        assert w[0] == pytest.approx(2.5)
        assert abs(abs(v[0, 0]) - 1.0) < 1e-14

    def test_symmetric_two_level(self):
        t = 0.7
        w, _ = linalg.eig_hermitian(np.array([[0.0, t], [t, 0.0]]))
        assert np.allclose(w, [-t, t], atol=1e-14)

    def test_open_chain_closed_form(self):
        # 5-site chain spectrum from the independent standing-wave formula
        n = 5
        m = np.zeros((n, n))
        for i in range(n - 1):
            m[i, i + 1] = m[i + 1, i] = -1.0
        w, _ = linalg.eig_hermitian(m)
        expected = np.sort(-2.0 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1)))
        assert np.allclose(w, expected, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(linalg.NotHermitianError):
            linalg.eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @given(st.integers(0, 10_000), st.integers(2, 12))
    @settings(max_examples=25, deadline=None)
    def test_reconstruction(self, seed, dim):
        m = hermitian_from_seed(seed, dim)
        w, v = linalg.eig_hermitian(m)
        rebuilt = (v * w) @ v.conj().T
        scale = max(linalg.max_abs(m), 1.0)
        assert linalg.max_abs(rebuilt - m) <= 1e-10 * scale
        assert linalg.max_abs(v.conj().T @ v - np.eye(dim)) <= 1e-10
        assert np.all(np.diff(w) >= -1e-12)


class TestExpmI:
    def test_zero_time_is_identity(self):
        m = hermitian_from_seed(3, 6)
        assert np.allclose(linalg.expm_i(m, 0.0), np.eye(6), atol=1e-14)

    def test_scalar_phase(self):
        omega0, tau = 0.8, 0.35
        out = linalg.expm_i(np.array([[omega0]]), tau)
        assert out[0, 0] == pytest.approx(np.exp(-1j * omega0 * tau), abs=1e-14)

    def test_two_level_half_angle(self):
        # closed-form 2x2 exponential: e^{-iMt} = e^{-i s t}(cos(r t) I - i sin(r t)/r (M - s I))
        a, b, c, t = 0.8, 0.0, 1.0, 0.37
        m = np.array([[a, c], [c, b]])
        s = (a + b) / 2
        r = np.hypot((a - b) / 2, c)
        expected = np.exp(-1j * s * t) * (
            np.cos(r * t) * np.eye(2) - 1j * np.sin(r * t) / r * (m - s * np.eye(2))
        )
        assert np.allclose(linalg.expm_i(m, t), expected, atol=1e-13)

    @given(st.integers(0, 10_000), st.floats(-3.0, 3.0))
    @settings(max_examples=25, deadline=None)
    def test_unitarity(self, seed, t):
        m = hermitian_from_seed(seed, 7)
        u = linalg.expm_i(m, t)
        assert linalg.max_abs(u @ u.conj().T - np.eye(7)) <= 1e-12

    @given(st.integers(0, 10_000), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
    @settings(max_examples=25, deadline=None)
    def test_group_property(self, seed, t1, t2):
        m = hermitian_from_seed(seed, 5)
        combined = linalg.expm_i(m, t1 + t2)
        composed = linalg.expm_i(m, t1) @ linalg.expm_i(m, t2)
        assert linalg.max_abs(combined - composed) <= 1e-10


class TestSpectralFunction:
    def test_identity_function(self):
        m = hermitian_from_seed(11, 4)
        assert linalg.max_abs(linalg.spectral_function(m, lambda x: x) - m) <= 1e-12

    def test_binary_entropy_half_filling(self):
        m = np.diag([0.5, 0.5])
        f = lambda x: x * np.log(x) + (1 - x) * np.log(1 - x)
        out = linalg.spectral_function(m, f)
        assert np.allclose(out, np.diag([-np.log(2)] * 2), atol=1e-14)

    def test_log_round_trip(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        m = a @ a.conj().T + 0.5 * np.eye(3)  # positive definite
        log_m = linalg.spectral_function(m, np.log)
        back = linalg.spectral_function(log_m, np.exp)
        assert linalg.max_abs(back - m) <= 1e-9 * linalg.max_abs(m)

    def test_composition(self):
        m = hermitian_from_seed(17, 5)
        f, g = np.exp, np.sin
        direct = linalg.spectral_function(m, lambda x: f(g(x)))
        chained = linalg.spectral_function(linalg.spectral_function(m, g), f)
        assert linalg.max_abs(direct - chained) <= 1e-10

    def test_domain_error_names_eigenvalue(self):
        m = np.diag([1.0, -2.0])
        with pytest.raises(linalg.SpectralDomainError) as err:
            linalg.spectral_function(m, np.log)
        assert err.value.eigenvalue == pytest.approx(-2.0)


class TestSpectralRadius:
    def test_identity(self):
        assert linalg.spectral_radius(np.eye(4)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert linalg.spectral_radius(np.diag([0.3, -0.9])) == pytest.approx(0.9)

    def test_power_iteration_against_dense(self):
        # the >1200-dim fallback, cross-checked against the dense eigenvalue
        # route on a matrix with a clear spectral gap
        rng = np.random.default_rng(23)
        m = 0.05 * (rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40)))
        m += np.diag(np.linspace(0.2, 1.0, 40))
        dense = float(np.max(np.abs(np.linalg.eigvals(m))))
        power = linalg._power_iteration_radius(m, tol=1e-9, seed=1)
        assert power == pytest.approx(dense, rel=1e-6)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            linalg.spectral_radius(np.zeros((2, 3)))


class TestSolveLinear:
    def test_identity(self):
        b = np.array([1.0, 2.0, 3.0], dtype=complex)
        assert np.allclose(linalg.solve_linear(np.eye(3), b), b)

    def test_diagonal(self):
        x = linalg.solve_linear(np.diag([2.0, 4.0]).astype(complex), np.array([2.0, 8.0]))
        assert np.allclose(x, [1.0, 2.0], atol=1e-14)

    def test_singular_raises_with_condition(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0 + 1e-15]], dtype=complex)
        with pytest.raises(linalg.SingularMatrixError) as err:
            linalg.solve_linear(a, np.array([1.0, 1.0]))
        assert err.value.condition_estimate > linalg.CONDITION_CAP

    @given(st.integers(0, 10_000), st.integers(2, 60))
    @settings(max_examples=40, deadline=None)
    def test_residual_contract_random_systems(self, seed, dim):
        rng = np.random.default_rng(seed)
        # diagonally dominated systems stay well-conditioned at any dim
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        a += 3.0 * dim**0.5 * np.eye(dim)
        b = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        x = linalg.solve_linear(a, b)
        residual = np.max(np.abs(a @ x - b))
        bound = 1e-10 * (
            np.linalg.norm(a, np.inf) * np.max(np.abs(x)) + np.max(np.abs(b))
        )
        assert residual <= bound


class TestFactoredSystem:
    def test_reuse_across_offsets(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20)) + 10 * np.eye(20)
        solver = linalg.FactoredSystem(a)
        for seed in range(4):
            b = np.random.default_rng(seed).standard_normal(20)
            assert np.allclose(a @ solver.solve(b), b, atol=1e-10)
