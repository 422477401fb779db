"""Exact N-particle Bose-Hubbard dimer.

Hamiltonian H = 2 eps L_z + 2 v L_x + 2 c L_z^2 in the L_z eigenbasis
(Fock states |n1 = k, n2 = N - k>, m_k = k - N/2), eigensolution,
level density, spin coherent states, Husimi distributions and exact
(spectral) time evolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import DomainError
from .meanfield import ModelParams, integrate
from .tridiag import eigh_tridiagonal_ql

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class QuantumParams:
    """Quantum parameters; c is the per-pair interaction, g = c N."""

    v: float
    c: float
    n_particles: int
    epsilon: float = 0.0

    def __post_init__(self):
        if self.n_particles < 1:
            raise DomainError(f"need at least one particle, got N={self.n_particles}")

    @property
    def g(self) -> float:
        return self.c * self.n_particles

    @classmethod
    def from_g(cls, v: float, g: float, n_particles: int, epsilon: float = 0.0):
        """Build from the macroscopic interaction g = c N (avoids the
        classic factor-N confusion between c and g)."""
        return cls(v=v, c=g / n_particles, n_particles=n_particles, epsilon=epsilon)

    def mean_field(self) -> ModelParams:
        return ModelParams(v=self.v, g=self.g, epsilon=self.epsilon)


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    diag: np.ndarray      # 2 eps m_k + 2 c m_k^2, k = 0..N
    offdiag: np.ndarray   # v sqrt(L(L+1) - m_k m_{k+1}), L = N/2
    n_particles: int


@dataclass(frozen=True)
class Spectrum:
    energies: np.ndarray      # ascending
    eigenvectors: np.ndarray  # orthonormal columns
    n_particles: int

    @property
    def energies_per_particle(self) -> np.ndarray:
        return self.energies / self.n_particles


@dataclass(frozen=True)
class HusimiGrid:
    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray       # raw |<theta,phi|Psi>|^2, shape (n_theta, n_phi)
    n_particles: int

    @property
    def normalized(self) -> np.ndarray:
        """Values scaled by (N+1)/(4 pi) so the grid integrates to 1."""
        return self.values * (self.n_particles + 1) / FOUR_PI


def build_hamiltonian(params: QuantumParams) -> TridiagonalHamiltonian:
    """Tridiagonal matrix of H in the L_z eigenbasis (dimension N + 1)."""
    n = params.n_particles
    big_l = 0.5 * n
    m = np.arange(n + 1) - big_l
    diag = 2.0 * params.epsilon * m + 2.0 * params.c * m * m
    offdiag = params.v * np.sqrt(big_l * (big_l + 1.0) - m[:-1] * m[1:])
    return TridiagonalHamiltonian(diag, offdiag, n)


def eigensystem(h: TridiagonalHamiltonian) -> Spectrum:
    """Full eigendecomposition (implicit-shift QL), eigenvalues ascending."""
    energies, vectors = eigh_tridiagonal_ql(h.diag, h.offdiag)
    return Spectrum(energies, vectors, h.n_particles)


def level_density(energies, n_bins: int = 30):
    """Histogram estimate rho = dn/dE over the spectral interval.

    Returns (bin centers, rho).
    """
    if n_bins < 2:
        raise DomainError(f"need at least 2 bins, got {n_bins}")
    energies = np.asarray(energies)
    counts, edges = np.histogram(energies, bins=n_bins,
                                 range=(energies.min(), energies.max()))
    centers = 0.5 * (edges[:-1] + edges[1:])
    rho = counts / np.diff(edges)
    return centers, rho


def count_states_above(spec: Spectrum, e_per_n: float) -> int:
    """Number of eigenstates with E_n / N above the given threshold."""
    return int(np.count_nonzero(spec.energies_per_particle > e_per_n))


def _coherent_log_moduli(theta: float, n: int) -> np.ndarray:
    """log |<k|theta,phi>| over the basis index k = n1 (mode-1 count)."""
    k1 = np.arange(n + 1)          # particles in mode 1
    k2 = n - k1                    # particles in mode 2
    log_binom = gammaln(n + 1) - gammaln(k1 + 1.0) - gammaln(k2 + 1.0)
    return 0.5 * log_binom + xlogy(k1, math.cos(0.5 * theta) ** 2) * 0.5 \
        + xlogy(k2, math.sin(0.5 * theta) ** 2) * 0.5


def coherent_state(theta: float, phi_az: float, n: int) -> np.ndarray:
    """Atomic (spin) coherent state |theta, phi> in the Fock basis.

    theta is measured from the north pole (= mode 1): theta = 0 gives
    |n1 = N>, theta = pi gives |n1 = 0, n2 = N> (south pole).  The mode-2
    occupation carries the phase factor exp(-i k2 phi).
    """
    moduli = np.exp(_coherent_log_moduli(theta, n))
    k2 = n - np.arange(n + 1)
    state = moduli * np.exp(-1j * k2 * phi_az)
    return state


def husimi(state, thetas, phis, n: int) -> HusimiGrid:
    """Husimi distribution |<theta, phi|Psi>|^2 on a (theta, phi) grid."""
    state = np.asarray(state, dtype=complex)
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise DomainError("husimi requires a unit-norm state")
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    k2 = n - np.arange(n + 1)
    # overlap(theta, phi) = sum_k moduli_k(theta) e^{+i k2 phi} Psi_k
    phase = np.exp(1j * np.outer(phis, k2))
    values = np.empty((thetas.size, phis.size))
    for i, theta in enumerate(thetas):
        w = np.exp(_coherent_log_moduli(theta, n)) * state
        values[i] = np.abs(phase @ w) ** 2
    return HusimiGrid(thetas, phis, values, n)


def evolve_expectation(spec: Spectrum, state0, t_grid) -> np.ndarray:
    """Time series of the scaled imbalance 2 <L_z> / N.

    Exact spectral evolution |psi(t)> = sum_n e^{-i E_n t} c_n |n>.
    """
    state0 = np.asarray(state0, dtype=complex)
    t_grid = np.asarray(t_grid, dtype=float)
    n = spec.n_particles
    v = spec.eigenvectors
    coeff = v.T @ state0
    phases = np.exp(-1j * np.outer(t_grid, spec.energies))
    psi_t = (phases * coeff) @ v.T          # (n_t, N+1) in the Fock basis
    m = np.arange(n + 1) - 0.5 * n
    lz = (np.abs(psi_t) ** 2) @ m
    return 2.0 * lz / n


def selftrapping_sweep(v: float, g_grid, t_grid, n_particles: int | None = None,
                       mode: str = "meanfield", rtol: float = 1e-12) -> np.ndarray:
    """Imbalance dynamics from the south pole versus interaction strength.

    Returns an array of shape (len(g_grid), len(t_grid)) holding z(t)
    (mean-field) or 2 <L_z> / N (quantum, requires n_particles).
    """
    g_grid = np.asarray(g_grid, dtype=float)
    t_grid = np.asarray(t_grid, dtype=float)
    out = np.empty((g_grid.size, t_grid.size))
    if mode == "meanfield":
        south = np.array([0.0, 0.0, -1.0])
        for i, g in enumerate(g_grid):
            params = ModelParams(v=v, g=float(g))
            traj = integrate(params, south, float(t_grid[-1]), rtol=rtol,
                             atol=1e-14, t_eval=t_grid)
            out[i] = traj.states[:, 2]
    elif mode == "quantum":
        if n_particles is None:
            raise DomainError("quantum sweep requires the particle number N")
        psi0 = coherent_state(math.pi, 0.0, n_particles)
        for i, g in enumerate(g_grid):
            qp = QuantumParams.from_g(v, float(g), n_particles)
            spec = eigensystem(build_hamiltonian(qp))
            out[i] = evolve_expectation(spec, psi0, t_grid)
    else:
        raise DomainError(f"unknown sweep mode {mode!r}")
    return out
