import numpy as np
import pytest

from dimerlab import quantum


@pytest.fixture(scope="session")
def spectrum_v1_g2_n1000():
    qp = quantum.QuantumParams.from_g(1.0, 2.0, 1000)
    return quantum.eigensystem(quantum.build_hamiltonian(qp))


@pytest.fixture(scope="session")
def spectrum_v05_g1_n1000():
    qp = quantum.QuantumParams.from_g(0.5, 1.0, 1000)
    return quantum.eigensystem(quantum.build_hamiltonian(qp))


@pytest.fixture
def rng():
    return np.random.default_rng(20120417)
