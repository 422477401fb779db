import math

import numpy as np
import pytest

from dimerlab.action import FOUR_PI, separatrix_area
from dimerlab.errors import DomainError
from dimerlab.meanfield import ModelParams
from dimerlab.semiclassics import (action_derivative, action_of_energy,
                                   compare_spectra, density_comparison,
                                   effective_params, period_action_factor,
                                   semiclassical_spectrum, window_count_estimate)

SUPER = ModelParams(v=1.0, g=2.0)


def test_action_endpoints():
    assert action_of_energy(SUPER, -1.0) == pytest.approx(FOUR_PI, abs=1e-9)
    assert action_of_energy(SUPER, 1.25) == pytest.approx(0.0, abs=1e-9)
    assert action_of_energy(SUPER, 1.0) == pytest.approx(2.0 * math.pi - 4.0, abs=1e-9)
    with pytest.raises(DomainError):
        action_of_energy(SUPER, 1.3)


def test_action_monotone_decreasing():
    grid = np.linspace(-0.999, 1.249, 60)
    values = [action_of_energy(SUPER, float(e)) for e in grid]
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))


def test_window_count_estimate():
    assert window_count_estimate(SUPER, 1000) == 182
    assert window_count_estimate(SUPER, 1000) == round(
        separatrix_area(0.5) * 1001 / FOUR_PI)


def test_effective_params_scaling():
    eff = effective_params(SUPER, 100)
    assert eff.v == pytest.approx(1.01)
    assert eff.g == pytest.approx(2.0 * 1.01 ** 2)


def test_subcritical_level_count():
    levels = semiclassical_spectrum(ModelParams(v=1.0, g=0.5), 60)
    assert len(levels) == 61
    assert all(lv.branch == "single" for lv in levels)
    energies = [lv.energy for lv in levels]
    assert energies == sorted(energies)


def test_supercritical_doublets_degenerate():
    levels = semiclassical_spectrum(SUPER, 40)
    doublets = [lv for lv in levels if lv.branch == "doublet"]
    assert doublets and len(doublets) % 2 == 0
    top = sorted(lv.energy for lv in doublets)
    assert top[0] == top[1]  # exact degeneracy by construction
    e_sep = effective_params(SUPER, 40).v  # quantization uses corrected params
    assert all(lv.energy > e_sep for lv in doublets)
    singles = [lv for lv in levels if lv.branch == "single"]
    assert all(lv.energy < e_sep for lv in singles)


def test_compare_spectra_accuracy():
    rows = compare_spectra(SUPER, 100)
    for _, _, e_exact, abs_err, _ in rows:
        if abs(e_exact - 1.0) > 0.05:
            assert abs_err < 5e-3


def test_action_derivative_negative():
    for e in (-0.5, 0.4, 1.1):
        assert action_derivative(SUPER, e) < 0.0


def test_period_action_factor_constant():
    values = [period_action_factor(SUPER, e) for e in (-0.7, -0.2, 0.5, 1.15)]
    assert np.allclose(values, values[0], rtol=1e-5)


def test_density_comparison():
    rows, kappa = density_comparison(SUPER, 400, n_bins=25)
    assert len(rows) == 25
    assert kappa == pytest.approx(period_action_factor(SUPER, -0.5), rel=1e-9)
    finite = [(e, rho, t) for e, rho, t in rows if math.isfinite(t)]
    # histogram density tracks the scaled period away from the separatrix
    rel = [abs(rho - t) / rho for e, rho, t in finite if abs(e - 1.0) > 0.15 and rho > 0]
    assert np.median(rel) < 0.2


def test_requires_supercritical_or_positive_g():
    with pytest.raises(DomainError):
        action_of_energy(ModelParams(v=1.0, g=-2.0), 0.0)
