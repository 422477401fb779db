"""Bohr-Sommerfeld quantization of the dimer via Viviani-curve areas.

The action of an orbit is the spherical area S(E) it encloses; N + 1
states tile the full phase space 4 pi, so the effective Planck cell is
4 pi / (N + 1).  Levels use the half-integer (harmonic Maslov) offset;
the offset-free estimate S_V (N+1) / (4 pi) counts the states inside the
separatrix window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .action import FOUR_PI, area, separatrix_area
from .errors import DomainError, NumericalError
from .meanfield import ModelParams, cylinder_from_energy, pendulum_period
from .quantum import QuantumParams, build_hamiltonian, eigensystem, level_density


@dataclass(frozen=True)
class SemiclassicalLevel:
    k: int            # cell index counted from the top of the spectrum
    energy: float
    branch: str       # "single" (below separatrix) or "doublet" (above)


def _energy_bounds(params: ModelParams) -> tuple[float, float]:
    v, g = params.v, params.g
    if g <= 0.0:
        raise DomainError("semiclassical quantization implemented for g > 0")
    a = v / g
    e_top = 0.5 * g * (1.0 + a * a) if a < 1.0 else v
    return -v, e_top


def action_of_energy(params: ModelParams, e_value: float) -> float:
    """Area S(E) enclosed by the constant-energy orbit.

    Monotone decreasing from 4 pi at E = -v to 0 at the top of the
    spectrum.
    """
    params.require_symmetric()
    e_min, e_top = _energy_bounds(params)
    if not e_min - 1e-9 <= e_value <= e_top + 1e-9:
        raise DomainError(f"E={e_value} outside the classically allowed [{e_min}, {e_top}]")
    return area(cylinder_from_energy(params, float(np.clip(e_value, e_min, e_top)))).s_inside


def effective_params(params: ModelParams, n_particles: int) -> ModelParams:
    """Spin-length-corrected parameters used for quantization.

    At finite N the classical limit enters through the spin length
    ell = L + 1/2 = (N + 1)/2 rather than L = N/2, which rescales v by
    (N+1)/N and g by ((N+1)/N)^2.  Without this O(1/N) correction the
    quantized levels carry a systematic error of order 1/N; with it the
    residual is O(1/N^2) away from the separatrix.
    """
    s = (n_particles + 1) / n_particles
    return ModelParams(v=params.v * s, g=params.g * s * s, epsilon=params.epsilon * s)


def window_count_estimate(params: ModelParams, n_particles: int) -> int:
    """Offset-free semiclassical count of states above the separatrix,
    round(S_sep (N+1) / (4 pi))."""
    a = params.v / params.g
    return round(separatrix_area(a) * (n_particles + 1) / FOUR_PI)


def _solve_action(params: ModelParams, target: float, e_lo: float, e_hi: float,
                  half: bool, k: int) -> float:
    scale = max(1.0, abs(e_hi), abs(e_lo))
    factor = 0.5 if half else 1.0

    def f(e):
        return factor * action_of_energy(params, e) - target

    lo = e_lo + 1e-12 * scale
    hi = e_hi - 1e-12 * scale
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0.0:
        raise NumericalError(
            f"quantization root not bracketed for cell k={k} (target {target})")
    return brentq(f, lo, hi, xtol=1e-10 * scale)


def semiclassical_spectrum(params: ModelParams, n_particles: int) -> list[SemiclassicalLevel]:
    """Bohr-Sommerfeld eigenvalues for N particles, sorted ascending.

    Below the separatrix (single-loop orbits) each level solves
    S(E_k) = (k + 1/2) 4 pi / (N + 1) with k counted from the top of the
    spectrum; above it (supercritical only) a single loop is quantized
    with the same cell and each level is emitted twice as an exactly
    degenerate doublet (tunneling splittings are not modeled).
    """
    params.require_symmetric()
    eff = effective_params(params, n_particles)
    e_min, e_top = _energy_bounds(eff)
    cell = FOUR_PI / (n_particles + 1)
    levels: list[SemiclassicalLevel] = []
    a = eff.v / eff.g
    if a < 1.0:  # supercritical: separatrix at E = v
        s_sep = separatrix_area(a)
        e_sep = eff.v
        j = 0
        while cell * (j + 0.5) < 0.5 * s_sep:
            e = _solve_action(eff, cell * (j + 0.5), e_sep, e_top, half=True, k=j)
            levels.append(SemiclassicalLevel(j, e, "doublet"))
            levels.append(SemiclassicalLevel(j, e, "doublet"))
            j += 1
        for k in range(n_particles + 1):
            target = cell * (k + 0.5)
            if target <= s_sep:
                continue
            e = _solve_action(eff, target, e_min, e_sep, half=False, k=k)
            levels.append(SemiclassicalLevel(k, e, "single"))
    else:
        for k in range(n_particles + 1):
            e = _solve_action(eff, cell * (k + 0.5), e_min, e_top, half=False, k=k)
            levels.append(SemiclassicalLevel(k, e, "single"))
    levels.sort(key=lambda lv: lv.energy)
    return levels


def compare_spectra(params: ModelParams, n_particles: int) -> list[tuple]:
    """Pair semiclassical and exact eigenvalues.

    Rows (k, E_semiclassical, E_exact, abs_error, branch).  Single-loop
    levels are paired from the bottom of both spectra, doublets from the
    top, which stays well-defined when the total semiclassical count
    differs from N + 1 by one near the separatrix.
    """
    sc = semiclassical_spectrum(params, n_particles)
    qp = QuantumParams.from_g(params.v, params.g, n_particles, params.epsilon)
    exact = eigensystem(build_hamiltonian(qp)).energies_per_particle
    singles = [lv for lv in sc if lv.branch == "single"]
    doublets = [lv for lv in sc if lv.branch == "doublet"]
    rows = []
    for i, lv in enumerate(singles):
        rows.append((i, lv.energy, float(exact[i]), abs(lv.energy - exact[i]), lv.branch))
    n_ex = exact.size
    doublets.sort(key=lambda lv: -lv.energy)
    for i, lv in enumerate(doublets):
        e_ex = float(exact[n_ex - 1 - i])
        rows.append((n_ex - 1 - i, lv.energy, e_ex, abs(lv.energy - e_ex), lv.branch))
    rows.sort(key=lambda row: row[0])
    return rows


def action_derivative(params: ModelParams, e_value: float, rel_step: float = 1e-6) -> float:
    """Central finite difference dS/dE (negative on both branches)."""
    e_min, e_top = _energy_bounds(params)
    h = rel_step * (e_top - e_min)
    return (action_of_energy(params, e_value + h) - action_of_energy(params, e_value - h)) / (2.0 * h)


def period_action_factor(params: ModelParams, e_value: float) -> float:
    """Numerically determined ratio |dS/dE| / T_eff(E).

    T_eff is the pendulum period, doubled above the separatrix where the
    orbit consists of two loops.  The ratio is the constant linking level
    density and period; it is measured, not assumed.
    """
    t = pendulum_period(params, cylinder_from_energy(params, e_value))
    if params.g > params.v and e_value > params.v:
        t *= 2.0
    return abs(action_derivative(params, e_value)) / t


def density_comparison(params: ModelParams, n_particles: int, n_bins: int = 30):
    """Quantum level density next to the scaled classical period curve.

    Returns (rows, kappa) with rows (E_center/N, rho_quantum, T_scaled),
    both density columns per unit mean-field energy E/N, and kappa the
    measured |dS/dE| / T_eff constant; T_scaled = (N+1) kappa T_eff / (4 pi).
    """
    params.require_symmetric()
    qp = QuantumParams.from_g(params.v, params.g, n_particles, params.epsilon)
    spec = eigensystem(build_hamiltonian(qp))
    centers, rho = level_density(spec.energies, n_bins)
    e_min, e_top = _energy_bounds(params)
    e_ref = e_min + 0.25 * (min(params.v, e_top) - e_min)
    kappa = period_action_factor(params, e_ref)
    rows = []
    for center, density in zip(centers, rho):
        e_mf = center / n_particles
        try:
            t = pendulum_period(params, cylinder_from_energy(params, e_mf))
            if params.g > params.v and e_mf > params.v:
                t *= 2.0
            t_scaled = (n_particles + 1) * kappa * t / FOUR_PI
        except (DomainError, NumericalError):
            t_scaled = math.inf
        rows.append((e_mf, float(density) * n_particles, t_scaled))
    return rows, kappa
