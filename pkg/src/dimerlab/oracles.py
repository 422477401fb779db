"""Independent brute-force references used by the test suite.

Deliberately slow and simple, sharing no code with the main paths they
check: Monte-Carlo spherical areas, direct quadrature of the elliptic
integrals, Sturm-sequence bisection eigenvalues, and ODE-measured
periods.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericalError
from .geometry import CylinderSpec
from .meanfield import ModelParams, measure_period


def mc_spherical_area(spec: CylinderSpec, n_samples: int, seed: int) -> tuple[float, float]:
    """Monte-Carlo estimate of the area inside the cylinder on the sphere.

    Uniform sphere sampling via normalized Gaussian triples; returns
    (mean, binomial standard error), both in absolute area units.
    """
    if n_samples < 10_000:
        raise DomainError(f"need at least 1e4 samples, got {n_samples}")
    rng = np.random.default_rng(seed)
    inside = 0
    remaining = n_samples
    while remaining > 0:
        chunk = min(remaining, 1_000_000)
        pts = rng.standard_normal((chunk, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        inside += int(np.count_nonzero(
            (pts[:, 0] - spec.a) ** 2 + pts[:, 1] ** 2 <= spec.r ** 2))
        remaining -= chunk
    frac = inside / n_samples
    four_pi = 4.0 * math.pi
    stderr = four_pi * math.sqrt(max(frac * (1.0 - frac), 1e-300) / n_samples)
    return four_pi * frac, stderr


def quad_elliptic(kind: str, m: float) -> float:
    """Direct adaptive quadrature of the defining elliptic integrals."""
    if kind == "K":
        f = lambda t: 1.0 / math.sqrt(1.0 - m * math.sin(t) ** 2)
    elif kind == "E":
        f = lambda t: math.sqrt(1.0 - m * math.sin(t) ** 2)
    else:
        raise DomainError(f"kind must be 'K' or 'E', got {kind!r}")
    val, err = quad(f, 0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-13, limit=300)
    if err > 1e-10:
        raise NumericalError(f"elliptic quadrature error {err} too large for m={m}")
    return val


def _sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues strictly below x (LDL^T sign count)."""
    count = 0
    q = 1.0
    for i in range(len(diag)):
        if i == 0:
            q = diag[0] - x
        else:
            q = diag[i] - x - off[i - 1] * off[i - 1] / q
        if abs(q) < 1e-300:
            q = -1e-300
        if q < 0.0:
            count += 1
    return count


def sturm_eigenvalues(diag, offdiag, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix by bisection on
    Sturm-sequence counts (no eigenvectors)."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(offdiag, dtype=float)
    n = diag.size
    radius = np.zeros(n)
    if n > 1:
        radius[0] = abs(off[0])
        radius[-1] = abs(off[-1])
        radius[1:-1] = np.abs(off[:-1]) + np.abs(off[1:])
    lo0 = float(np.min(diag - radius))
    hi0 = float(np.max(diag + radius))
    scale = max(abs(lo0), abs(hi0), 1.0)
    out = np.empty(n)
    for k in range(n):
        lo, hi = lo0, hi0
        while hi - lo > tol * scale:
            mid = 0.5 * (lo + hi)
            if _sturm_count(diag, off, mid) >= k + 1:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
    return out


def period_by_ode(params: ModelParams, spec: CylinderSpec, rtol: float = 1e-12) -> float:
    """Orbit period measured from the ODE flow on the given energy cylinder.

    Starts at the phi = pi point of the curve (northern lift) and uses
    the Poincare first-return detector; times out on the separatrix.
    """
    a, r = spec.a, spec.r
    rad = 1.0 - (a - r) ** 2
    if rad < 0.0:
        raise DomainError(f"cylinder a={a}, r={r} does not intersect the sphere")
    s0 = np.array([a - r, 0.0, math.sqrt(rad)])
    return measure_period(params, s0, rtol=rtol)
