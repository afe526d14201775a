import numpy as np
import pytest

from stroboreset import model, resetmap
from stroboreset.model import BathSpec, SystemSpec


@pytest.fixture(scope="session")
def small_setup():
    """Shared 40-site in-band setup used by most unit tests."""
    bath = BathSpec(n_sites=40)
    system = SystemSpec(omega0=0.8)
    basis = model.bath_basis(bath)
    occupations = model.reference_state(basis, system)
    hamiltonian, _ = model.hamiltonian_in_mode_basis(bath, system, basis)
    propagator = resetmap.CyclePropagator(hamiltonian)
    return bath, system, basis, occupations, propagator


def random_state(basis, occupations, seed=0, scale=0.02):
    """Physically admissible post-reset state with small random coherences."""
    rng = np.random.default_rng(seed)
    n = basis.frequencies.shape[0]
    x = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    state = resetmap.BlockedSPDM(
        p=float(rng.uniform(0.2, 0.8)),
        x=x,
        y=x.conj(),
        bath=np.diag(occupations).astype(complex),
    )
    return state
