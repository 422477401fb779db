"""Spherical areas enclosed by generalized Viviani curves.

These areas are the semiclassical action integrals of the dimer.  The
evaluation uses the area-conserving Archimedes projection of the sphere
onto the cylinder touching it at the equator, which reduces the area to
the one-dimensional integral S0 over the base angle phi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericalError, PoleError
from .geometry import CLASS_TOL, CurveClass, CylinderSpec, classify, phi_gap
from .specfun import elliptic_e, elliptic_k

FOUR_PI = 4.0 * math.pi


class AreaMethod(Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class AreaResult:
    """Spherical area enclosed by the curve (summed over loops)."""

    s_inside: float
    s0: float
    method: AreaMethod
    est_error: float = 0.0

    @property
    def s_over_4pi(self) -> float:
        return self.s_inside / FOUR_PI


def cylindrical_projection(p) -> tuple[float, float]:
    """Archimedes projection (x, y, z) -> (azimuth, z); area element z dphi.

    Undefined at the poles, which project onto full circles.
    """
    x, y, z = p
    if abs(abs(z) - 1.0) <= 1e-12:
        raise PoleError("cylindrical projection undefined at the poles (|z| = 1)")
    return math.atan2(y, x), z


def _s0_integrand(phi: float, a: float, r: float) -> float:
    rad = 1.0 - r * r - a * a - 2.0 * a * r * math.cos(phi)
    if rad <= 0.0:
        return 0.0
    num = r + a * math.cos(phi)
    den = a * a + r * r + 2.0 * a * r * math.cos(phi)
    if den < 1e-300:
        # pinch point phi = pi at r = a; finite limit sqrt(rad)/2
        return 0.5 * math.sqrt(rad)
    return r * math.sqrt(rad) * num / den


# |r - a| below this uses the analytic pinch subtraction: the integrand
# develops a width-|r-a| spike at phi = pi (amplitude ~ r/(r-a)) that an
# adaptive rule can silently step over.
_PINCH_DELTA = 0.02
_PINCH_PHI = 0.3


def _s0_pinch_split(a: float, r: float, phi0: float) -> tuple[float, float]:
    """S0 for r ~ a: substitute u = cos(phi/2) near phi = pi and integrate
    the rational pinch factor ((r-a) + 2 a u^2) / ((r-a)^2 + 4 a r u^2)
    analytically against the frozen smooth prefactor."""
    delta = r - a
    adel = abs(delta)
    m = (1.0 - delta * delta) / (4.0 * a * r)
    if m <= 0.0:
        return 0.0, 0.0
    u0 = math.sqrt(m)
    u_c = min(math.cos(0.5 * (math.pi - _PINCH_PHI)), u0)
    phi_c = 2.0 * math.acos(min(u_c, 1.0))
    total = 0.0
    err = 0.0
    if phi_c > phi0 + 1e-14:
        v1, e1 = quad(_s0_integrand, phi0, phi_c, args=(a, r),
                      epsabs=1e-12, epsrel=1e-12, limit=500)
        total += v1
        err += e1
    w0 = 2.0 * r * math.sqrt(max(1.0 - delta * delta, 0.0))
    s_ar = 2.0 * math.sqrt(a * r)
    if adel > 0.0:
        atanv = math.atan(s_ar * u_c / adel)
        lin = math.copysign(atanv / s_ar, delta)
        i2 = (u_c - (adel / s_ar) * atanv) / (4.0 * a * r)
    else:
        lin = 0.0
        i2 = u_c / (4.0 * a * r)
    total += w0 * (lin + 2.0 * a * i2)

    def remainder(u: float) -> float:
        rad = 1.0 - delta * delta - 4.0 * a * r * u * u
        rational = (delta + 2.0 * a * u * u) / (delta * delta + 4.0 * a * r * u * u)
        smooth = 2.0 * r * math.sqrt(max(rad, 0.0)) / math.sqrt(max(1.0 - u * u, 1e-300))
        return (smooth - w0) * rational

    v2, e2 = quad(remainder, 0.0, u_c, epsabs=1e-12, epsrel=1e-12, limit=500)
    return total + v2, err + e2


def area_s0_quadrature(spec: CylinderSpec) -> tuple[float, float]:
    """Signed integral S0 between the curve and the equator strip.

    Integrates the projected area element from phi0 to pi by adaptive
    Gauss-Kronrod quadrature; returns (value, achieved abs error).
    The sqrt endpoint behavior at phi0 is handled by subdivision and the
    integrable pinch at phi = pi for r ~ a by analytic subtraction.
    """
    cls = classify(spec)
    if cls is CurveClass.EMPTY:
        raise DomainError(f"empty intersection for a={spec.a}, r={spec.r}")
    phi0 = phi_gap(spec)
    if phi0 is None:
        phi0 = 0.0
    if phi0 >= math.pi:
        return 0.0, 0.0
    if abs(spec.r - spec.a) < _PINCH_DELTA and spec.a > 0.0 and spec.r > 0.0:
        val, err = _s0_pinch_split(spec.a, spec.r, phi0)
    else:
        val, err = quad(_s0_integrand, phi0, math.pi, args=(spec.a, spec.r),
                        epsabs=1e-12, epsrel=1e-12, limit=500)
    if err > 1e-9:
        raise NumericalError(
            f"S0 quadrature reached abs error {err:.2e} > 1e-9 for a={spec.a}, r={spec.r}")
    return val, err


def _s0_closed_poles(a: float) -> float:
    """Closed form of S0 for the pole-crossing family r = a."""
    if a <= 0.5:
        return 2.0 * elliptic_e(4.0 * a * a)
    m = 1.0 / (4.0 * a * a)
    return 4.0 * a * (elliptic_e(m) - (1.0 - m) * elliptic_k(m))


def separatrix_area(a: float) -> float:
    """Area enclosed by the figure-eight separatrix curve r = 1 - a.

    S = 8 arcsin(sqrt(1-a)) - 8 sqrt(a (1-a)), monotone decreasing from
    4 pi (a -> 0) to 0 (a -> 1).
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"separatrix exists only for 0 < a < 1, got a={a}")
    return 8.0 * math.asin(math.sqrt(1.0 - a)) - 8.0 * math.sqrt(a * (1.0 - a))


def area(spec: CylinderSpec) -> AreaResult:
    """Total spherical area inside the intersection curve.

    Piecewise in the sign of r - a:
        S = -4 S0        for r < a
        S = 2 pi - 2 S0  for r = a
        S = 4 pi - 4 S0  for r > a
    with the conventions S = 0 for r < a - 1 and S = 4 pi for r > 1 + a.
    Closed forms are used on the r = a and r = 1 - a families.
    """
    a, r = spec.a, spec.r
    cls = classify(spec)
    if cls is CurveClass.EMPTY or cls is CurveClass.POINT_TANGENCY:
        full = r > a  # outer tangency/containment encloses the whole sphere
        return AreaResult(FOUR_PI if full else 0.0, 0.0, AreaMethod.CLOSED_FORM)
    if abs(r - a) <= CLASS_TOL:
        s0 = _s0_closed_poles(a)
        s = 2.0 * math.pi - 2.0 * s0
        return _checked(s, s0, AreaMethod.CLOSED_FORM, 0.0)
    if a < 1.0 and abs(r - (1.0 - a)) <= CLASS_TOL:
        s = separatrix_area(a)
        s0 = (FOUR_PI - s) / 4.0 if r > a else -s / 4.0
        return _checked(s, s0, AreaMethod.CLOSED_FORM, 0.0)
    s0, err = area_s0_quadrature(spec)
    s = -4.0 * s0 if r < a else FOUR_PI - 4.0 * s0
    return _checked(s, s0, AreaMethod.QUADRATURE, 4.0 * err)


def _checked(s: float, s0: float, method: AreaMethod, err: float) -> AreaResult:
    if not -1e-9 <= s <= FOUR_PI + 1e-9:
        raise NumericalError(f"area {s} outside [0, 4 pi]")
    return AreaResult(min(max(s, 0.0), FOUR_PI), s0, method, err)


def area_vs_radius_dataset(a: float, r_grid) -> list[tuple]:
    """Rows (r, S, S/4pi, method, est_error) over a radius grid.

    S/4pi grows monotonically from 0 to 1 as r covers [0, 1 + a].  For
    two-loop curves the north and south loops each carry S/2 by the
    z -> -z symmetry.
    """
    rows = []
    for r in r_grid:
        res = area(CylinderSpec(a, float(r)))
        rows.append((float(r), res.s_inside, res.s_over_4pi, res.method.value, res.est_error))
    return rows
