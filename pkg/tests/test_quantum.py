import math

import numpy as np
import pytest

from dimerlab.errors import DomainError
from dimerlab.quantum import (QuantumParams, build_hamiltonian, coherent_state,
                              count_states_above, eigensystem, evolve_expectation,
                              husimi, level_density, selftrapping_sweep)
from dimerlab.tridiag import eigh_tridiagonal_ql


def test_params():
    qp = QuantumParams.from_g(1.0, 2.0, 100)
    assert qp.c == pytest.approx(0.02)
    assert qp.g == pytest.approx(2.0)
    assert qp.mean_field().g == pytest.approx(2.0)
    with pytest.raises(DomainError):
        QuantumParams(v=1.0, c=0.1, n_particles=0)


def test_hamiltonian_n1():
    # N=1: m = -+1/2, diag = c/2 +- eps, offdiag = v
    qp = QuantumParams(v=1.3, c=0.4, n_particles=1, epsilon=0.0)
    h = build_hamiltonian(qp)
    assert np.allclose(h.diag, [0.2, 0.2])
    assert np.allclose(h.offdiag, [1.3])
    spec = eigensystem(h)
    assert np.allclose(spec.energies, [0.2 - 1.3, 0.2 + 1.3])


def test_hamiltonian_n2_free():
    qp = QuantumParams(v=0.7, c=0.0, n_particles=2)
    spec = eigensystem(build_hamiltonian(qp))
    assert np.allclose(spec.energies, [-1.4, 0.0, 1.4], atol=1e-12)


def test_eigensystem_against_numpy(rng):
    n = 40
    diag = rng.standard_normal(n)
    off = rng.standard_normal(n - 1)
    evals, evecs = eigh_tridiagonal_ql(diag, off)
    full = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    ref = np.linalg.eigvalsh(full)
    assert np.allclose(evals, ref, atol=1e-12)
    assert np.allclose(evecs.T @ evecs, np.eye(n), atol=1e-12)
    # residual ||H v - lambda v||
    res = full @ evecs - evecs * evals
    assert np.max(np.abs(res)) < 1e-12


def test_coherent_state_norm_and_imbalance():
    n = 120
    for theta in (0.1, 1.0, math.pi / 2, 2.5):
        state = coherent_state(theta, 0.7, n)
        assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-12)
        m = np.arange(n + 1) - 0.5 * n
        z = 2.0 * float(np.abs(state) ** 2 @ m) / n
        assert z == pytest.approx(math.cos(theta), abs=1e-12)


def test_coherent_state_poles():
    n = 30
    north = coherent_state(0.0, 0.0, n)
    south = coherent_state(math.pi, 0.0, n)
    assert north[n] == pytest.approx(1.0)   # |n1 = N>
    assert south[0] == pytest.approx(1.0)   # |n1 = 0>


def test_husimi_of_coherent_state_peaks_at_itself():
    n = 60
    theta0, phi0 = 1.1, -0.8
    state = coherent_state(theta0, phi0, n)
    thetas = np.linspace(0.0, math.pi, 81)
    phis = np.linspace(-math.pi, math.pi, 81)
    grid = husimi(state, thetas, phis, n)
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    assert thetas[i] == pytest.approx(theta0, abs=0.05)
    assert phis[j] == pytest.approx(phi0, abs=0.05)
    assert grid.values.max() > 0.99  # near-perfect overlap up to grid resolution


def test_husimi_normalization():
    n = 80
    qp = QuantumParams.from_g(1.0, 2.0, n)
    spec = eigensystem(build_hamiltonian(qp))
    state = spec.eigenvectors[:, 5].astype(complex)
    thetas = np.linspace(0.0, math.pi, 161)
    phis = np.linspace(-math.pi, math.pi, 161)
    grid = husimi(state, thetas, phis, n)
    integrand = grid.normalized * np.sin(thetas)[:, None]
    total = np.trapezoid(np.trapezoid(integrand, phis, axis=1), thetas)
    assert total == pytest.approx(1.0, abs=1e-3)


def test_husimi_requires_unit_norm():
    with pytest.raises(DomainError):
        husimi(np.ones(11), [0.5], [0.0], 10)


def test_rabi_oscillation_exact():
    # c = 0: z(t) = -cos(2 v t) from the south pole
    n, v = 40, 0.9
    qp = QuantumParams(v=v, c=0.0, n_particles=n)
    spec = eigensystem(build_hamiltonian(qp))
    t = np.linspace(0.0, 8.0, 60)
    z = evolve_expectation(spec, coherent_state(math.pi, 0.0, n), t)
    assert np.allclose(z, -np.cos(2.0 * v * t), atol=1e-10)


def test_level_density_and_counts(spectrum_v1_g2_n1000):
    centers, rho = level_density(spectrum_v1_g2_n1000.energies, 25)
    assert centers.size == 25
    widths = centers[1] - centers[0]
    assert np.sum(rho) * widths == pytest.approx(1001, rel=0.01)
    n_above = count_states_above(spectrum_v1_g2_n1000, 1.0)
    assert n_above + count_states_above(spectrum_v1_g2_n1000, -2.0) - n_above == 1001
    with pytest.raises(DomainError):
        level_density(spectrum_v1_g2_n1000.energies, 1)


def test_selftrapping_sweep_modes():
    t = np.linspace(0.0, 3.0, 30)
    g = np.array([0.5, 3.0])
    mf = selftrapping_sweep(1.0, g, t, mode="meanfield", rtol=1e-10)
    qm = selftrapping_sweep(1.0, g, t, n_particles=400, mode="quantum")
    assert mf.shape == qm.shape == (2, 30)
    assert np.allclose(mf[:, 0], -1.0, atol=1e-12)
    # quantum tracks mean field at N=400 over a short window
    assert np.max(np.abs(mf - qm)) < 0.05
    # subcritical swings past the equator, supercritical stays trapped
    assert mf[0].max() > 0.5
    assert mf[1].max() < 0.0
    with pytest.raises(DomainError):
        selftrapping_sweep(1.0, g, t, mode="quantum")
    with pytest.raises(DomainError):
        selftrapping_sweep(1.0, g, t, mode="bogus")
