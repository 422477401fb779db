"""Generalized Viviani curves: intersection of the unit sphere with a
displaced cylinder.

The cylinder (x - a)^2 + y^2 = r^2 is parametrized by the base angle phi,
x = a + r cos(phi), y = r sin(phi), and lifted to the sphere by
z = +-sqrt(1 - x^2 - y^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

#: tolerance for boundary classification (|r-(1-a)|, |r-a|, ...)
CLASS_TOL = 1e-12


class CurveClass(Enum):
    TWO_LOOPS = "two_loops"
    SINGLE_LOOP = "single_loop"
    FIGURE_EIGHT = "figure_eight"
    VIVIANI_CURVE = "viviani_curve"
    POINT_TANGENCY = "point_tangency"
    GREAT_CIRCLE_LIMIT = "great_circle_limit"
    EMPTY = "empty"


class Hemisphere(Enum):
    NORTH = 1
    SOUTH = -1


@dataclass(frozen=True)
class CylinderSpec:
    """Cylinder of radius r centered on the axis x = a (parallel to z).

    Negative a is normalized to a >= 0 via the x -> -x mirror symmetry.
    """

    a: float
    r: float

    def __post_init__(self):
        if self.r < 0.0:
            raise DomainError(f"cylinder radius must be >= 0, got r={self.r}")
        if self.a < 0.0:
            object.__setattr__(self, "a", -self.a)

    @property
    def intersects_sphere(self) -> bool:
        return abs(self.a - self.r) <= 1.0 + CLASS_TOL and self.r <= 1.0 + self.a + CLASS_TOL


VIVIANI = CylinderSpec(0.5, 0.5)


def classify(spec: CylinderSpec, tol: float = CLASS_TOL) -> CurveClass:
    """Topological class of the intersection curve."""
    a, r = spec.a, spec.r
    if r > 1.0 + a + tol or r < a - 1.0 - tol:
        return CurveClass.EMPTY
    if a <= tol:
        if abs(r - 1.0) <= tol:
            return CurveClass.GREAT_CIRCLE_LIMIT
        if r <= tol:
            return CurveClass.POINT_TANGENCY  # degenerate axis: the poles
        return CurveClass.TWO_LOOPS  # two circles of latitude
    if abs(r - (1.0 + a)) <= tol or (a >= 1.0 - tol and abs(r - (a - 1.0)) <= tol):
        return CurveClass.POINT_TANGENCY
    if r <= tol:
        # degenerate axis: two isolated points (a, 0, +-sqrt(1-a^2))
        return CurveClass.POINT_TANGENCY if a < 1.0 + tol else CurveClass.EMPTY
    if abs(r - a) <= tol and abs(a - 0.5) <= tol:
        return CurveClass.VIVIANI_CURVE
    if a < 1.0 and abs(r - (1.0 - a)) <= tol:
        return CurveClass.FIGURE_EIGHT
    if a < 1.0 and r < 1.0 - a:
        return CurveClass.TWO_LOOPS
    return CurveClass.SINGLE_LOOP


#: classes whose base circle does not fully intersect the sphere
_GAPPED = (
    CurveClass.SINGLE_LOOP,
    CurveClass.FIGURE_EIGHT,
    CurveClass.VIVIANI_CURVE,
    CurveClass.POINT_TANGENCY,
)


def phi_gap(spec: CylinderSpec) -> float | None:
    """Half-opening angle phi0 of the excluded arc |phi| < phi0.

    Returns None for classes where the whole base circle lifts to the
    sphere (two-loop and concentric cases) and for empty intersections.
    The tangent classes return the degenerate value (0 or pi).
    """
    cls = classify(spec)
    if cls not in _GAPPED:
        return None
    a, r = spec.a, spec.r
    arg = (1.0 - a * a - r * r) / (2.0 * a * r)
    if abs(arg) > 1.0 + 1e-12:
        raise DomainError(f"inconsistent phi_gap argument {arg} for a={a}, r={r}")
    return math.acos(min(1.0, max(-1.0, arg)))


def curve_point(spec: CylinderSpec, phi: float, hemisphere: Hemisphere = Hemisphere.NORTH) -> np.ndarray:
    """Point on the intersection curve at base angle phi.

    Raises DomainError when the base point (x, y) lies outside the sphere
    (radicand below -1e-12).
    """
    a, r = spec.a, spec.r
    x = a + r * math.cos(phi)
    y = r * math.sin(phi)
    rad = 1.0 - x * x - y * y
    if rad < -1e-12:
        phi0 = phi_gap(spec)
        rng = f"|phi| >= phi0 = {phi0}" if phi0 is not None else "empty intersection"
        raise DomainError(f"base point off the sphere at phi={phi}; admissible range: {rng}")
    z = hemisphere.value * math.sqrt(max(0.0, rad))
    return np.array([x, y, z])


def viviani_point(phi_az: float) -> np.ndarray:
    """Original Viviani curve parametrized by the azimuthal angle.

    Satisfies the defining condition that the azimuth equals the polar
    angle measured from the equator; relates to curve_point(VIVIANI, phi)
    through the half-angle map phi_az = phi / 2.
    """
    c, s = math.cos(phi_az), math.sin(phi_az)
    return np.array([c * c, c * s, s])


def yz_projection_residual(spec: CylinderSpec, p) -> float:
    """Residual of the (y, z)-projection equation of the curve.

    Eliminating x between the sphere and the cylinder gives
    (1 - z^2 + a^2 - r^2)^2 + 4 a^2 y^2 - 4 a^2 (1 - z^2) = 0, a
    quartic in (y, z) (the Lemniscate of Gerono for the Viviani curve).
    """
    a, r = spec.a, spec.r
    _, y, z = p
    one_m = 1.0 - z * z
    return (one_m + a * a - r * r) ** 2 + 4.0 * a * a * (y * y - one_m)


def focal_points(spec: CylinderSpec):
    """Focal points (F+, F-) and half distance-sum c of the curve viewed
    as a euclidic spherical ellipse: chord distances to the foci sum to 2c.

    x_F = a / (1 + r), z_F = +-sqrt(1 - x_F^2), c^2 = z_F^2 a / x_F.
    """
    a, r = spec.a, spec.r
    if a <= CLASS_TOL:
        raise DomainError("focal points degenerate for a = 0 (concentric cylinder)")
    x_f = a / (1.0 + r)
    if x_f > 1.0:
        raise DomainError(f"focal abscissa x_F={x_f} > 1 (no intersection)")
    z_f = math.sqrt(max(0.0, 1.0 - x_f * x_f))
    c = math.sqrt(z_f * z_f * a / x_f)
    return np.array([x_f, 0.0, z_f]), np.array([x_f, 0.0, -z_f]), c


def sample_curve(spec: CylinderSpec, n: int = 400):
    """Ordered samples of the intersection curve.

    Returns a list of (phi, x, y, z, hemisphere-label) tuples.  Single
    loops run phi from phi0 to 2 pi - phi0 on the northern branch and
    back on the southern one, closing the loop at the z = 0 crossings;
    two-loop curves emit each hemisphere's loop over phi in [0, 2 pi].
    """
    cls = classify(spec)
    if cls is CurveClass.EMPTY:
        raise DomainError(f"empty intersection for a={spec.a}, r={spec.r}")
    rows = []
    if cls in (CurveClass.TWO_LOOPS, CurveClass.GREAT_CIRCLE_LIMIT):
        for hemi in (Hemisphere.NORTH, Hemisphere.SOUTH):
            for phi in np.linspace(0.0, 2.0 * math.pi, n):
                p = curve_point(spec, phi, hemi)
                rows.append((phi, p[0], p[1], p[2], hemi.name.lower()))
    else:
        phi0 = phi_gap(spec)
        phis = np.linspace(phi0, 2.0 * math.pi - phi0, n)
        for phi in phis:
            p = curve_point(spec, phi, Hemisphere.NORTH)
            rows.append((phi, p[0], p[1], p[2], "north"))
        for phi in phis[::-1]:
            p = curve_point(spec, phi, Hemisphere.SOUTH)
            rows.append((phi, p[0], p[1], p[2], "south"))
    return rows
