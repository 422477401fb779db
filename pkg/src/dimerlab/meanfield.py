"""Mean-field (Gross-Pitaevskii) dynamics of the Bose-Hubbard dimer.

Flow of the rescaled Bloch vector s = (x, y, z) on the unit sphere,
its canonical (p, q) form, fixed points, the exact pendulum reduction
on constant-energy cylinders, and closed-form periods.

Conventions: energy E = eps z + v x + (g/2) z^2 with v > 0; closed-form
operations (fixed points, cylinder mapping, periods) require eps = 0 and
map attractive g < 0 inputs through the |g| symmetry first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, NumericalError, PoleError, SeparatrixError, TurningPointError
from .geometry import CylinderSpec
from .specfun import elliptic_k


@dataclass(frozen=True)
class ModelParams:
    """Mean-field parameters: coupling v > 0, interaction g = cN, offset eps."""

    v: float
    g: float
    epsilon: float = 0.0

    def __post_init__(self):
        if self.v <= 0.0:
            raise DomainError(f"coupling must satisfy v > 0, got v={self.v}")

    @property
    def a(self) -> float:
        """Cylinder displacement a = v / g of the constant-energy family."""
        if self.g == 0.0:
            raise DomainError("a = v/g undefined for g = 0")
        return self.v / self.g

    def require_symmetric(self):
        if self.epsilon != 0.0:
            raise DomainError("operation defined for the symmetric dimer (epsilon = 0) only")


class Stability(Enum):
    MIN = "min"
    MAX = "max"
    SADDLE = "saddle"
    CENTER = "center"


@dataclass(frozen=True)
class FixedPointSet:
    points: tuple  # of (ndarray, energy, Stability)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n, 3)
    energy: float
    energy_drift: float  # max relative drift along the series
    norm_drift: float    # max | |s| - 1 |
    period: float | None = None


def energy(params: ModelParams, s) -> float:
    """Conserved energy E = eps z + v x + (g/2) z^2 of the Bloch flow."""
    x, _, z = s
    return params.epsilon * z + params.v * x + 0.5 * params.g * z * z


def bloch_rhs(params: ModelParams, s) -> np.ndarray:
    """Nonlinear Bloch equations for the rescaled spin vector.

    xdot = -2 eps y - 2 g y z
    ydot = +2 eps x + 2 g x z - 2 v z
    zdot = +2 v y
    The tangent is orthogonal to s, so |s| and E are conserved exactly.
    """
    x, y, z = s
    e, v, g = params.epsilon, params.v, params.g
    return np.array([
        -2.0 * e * y - 2.0 * g * y * z,
        2.0 * e * x + 2.0 * g * x * z - 2.0 * v * z,
        2.0 * v * y,
    ])


def fixed_points(params: ModelParams) -> FixedPointSet:
    """Fixed points of the symmetric flow with stability labels.

    s0+- = (+-1, 0, 0) always; the self-trapping pair
    s1+- = (a, 0, +-sqrt(1-a^2)) exists iff a^2 < 1 (|g| > v), born in the
    bifurcation that turns the equatorial extremum at x = sgn(a) into a
    saddle.
    """
    params.require_symmetric()
    v, g = params.v, params.g
    pts = []
    supercritical = g != 0.0 and (v / g) ** 2 < 1.0
    if supercritical:
        a = v / g
        saddle_x = 1.0 if a > 0 else -1.0
        ext = Stability.MAX if g > 0 else Stability.MIN
        pts.append((np.array([1.0, 0.0, 0.0]), v,
                    Stability.SADDLE if saddle_x > 0 else Stability.MAX))
        pts.append((np.array([-1.0, 0.0, 0.0]), -v,
                    Stability.SADDLE if saddle_x < 0 else Stability.MIN))
        zs = math.sqrt(1.0 - a * a)
        em = 0.5 * g * (1.0 + a * a)
        pts.append((np.array([a, 0.0, zs]), em, ext))
        pts.append((np.array([a, 0.0, -zs]), em, ext))
    else:
        pts.append((np.array([1.0, 0.0, 0.0]), v, Stability.MAX))
        pts.append((np.array([-1.0, 0.0, 0.0]), -v, Stability.MIN))
    return FixedPointSet(tuple(pts))


def cylinder_from_energy(params: ModelParams, e_value: float) -> CylinderSpec:
    """Constant-energy cylinder (a, r) = (v/g, sqrt(1 + a^2 - 2E/g)).

    The inverse relation E = g (1 + a^2 - r^2) / 2 round-trips exactly.
    Requires eps = 0 and g != 0; E must lie in the classically allowed
    range (the resulting cylinder must intersect the sphere).
    """
    params.require_symmetric()
    if params.g == 0.0:
        raise DomainError("cylinder mapping undefined for g = 0 (orbits are circles of x)")
    a = params.v / params.g
    r_sq = 1.0 + a * a - 2.0 * e_value / params.g
    if r_sq < -1e-12:
        raise DomainError(f"energy E={e_value} outside the classically allowed range")
    r = math.sqrt(max(0.0, r_sq))
    a_abs = abs(a)
    if r > 1.0 + a_abs + 1e-9 or r < a_abs - 1.0 - 1e-9:
        raise DomainError(f"energy E={e_value} outside the classically allowed range")
    return CylinderSpec(a_abs, min(r, 1.0 + a_abs))


def pendulum_parameter(spec: CylinderSpec) -> float:
    """Elliptic parameter m = (1 - (r-a)^2) / (4 a r) of the pendulum.

    m > 1: rotation (two loops); m < 1: libration (single loop); m = 1 is
    the separatrix.
    """
    a, r = spec.a, spec.r
    if a <= 0.0 or r <= 0.0:
        raise DomainError(f"pendulum parameter degenerate for a={a}, r={r}")
    return (1.0 - (r - a) ** 2) / (4.0 * a * r)


def pendulum_period(params: ModelParams, spec: CylinderSpec) -> float:
    """Closed-form orbital period via complete elliptic integrals.

    Rotation (m > 1):  T = K(1/m) / (g sqrt(m a r))   [argument is 1/m]
    Libration (m <= 1): T = 2 K(m) / (g sqrt(a r))
    Diverges logarithmically at the separatrix m = 1.
    """
    params.require_symmetric()
    g = abs(params.g)
    if g == 0.0:
        # linear limit: global rotation about x with frequency 2v
        return math.pi / params.v
    m = pendulum_parameter(spec)
    if abs(m - 1.0) < 1e-12:
        raise SeparatrixError("period diverges on the separatrix (m = 1)")
    if m < 0.0:
        raise DomainError(f"no real orbit: m={m} < 0 (empty intersection)")
    a, r = spec.a, spec.r
    if m > 1.0:
        return elliptic_k(1.0 / m) / (g * math.sqrt(m * a * r))
    return 2.0 * elliptic_k(m) / (g * math.sqrt(a * r))


def pendulum_reduce(params: ModelParams, spec: CylinderSpec, phi: float,
                    branch: int = +1) -> tuple[float, float]:
    """Pendulum phase-space derivatives (phidot, phiddot) at base angle phi.

    phidot = +-2 g sqrt(1 - a^2 - r^2 - 2 a r cos(phi));
    phiddot = 4 v g r sin(phi) (sign verified against d(phidot^2)/dphi).
    Raises TurningPointError beyond the libration endpoints.
    """
    params.require_symmetric()
    g = abs(params.g)
    a, r = spec.a, spec.r
    rad = 1.0 - a * a - r * r - 2.0 * a * r * math.cos(phi)
    if rad < -1e-12:
        theta0 = math.pi - math.acos(min(1.0, max(-1.0, (a * a + r * r - 1.0) / (2.0 * a * r))))
        raise TurningPointError(
            f"phi={phi} beyond the libration turning points (theta0={theta0})")
    phidot = branch * 2.0 * g * math.sqrt(max(0.0, rad))
    phiddot = 4.0 * params.v * g * r * math.sin(phi)
    return phidot, phiddot


def canonical_form(params: ModelParams, p: float, q: float) -> tuple[float, float, float]:
    """Hamiltonian and canonical derivatives in (p, q) = (imbalance, half phase).

    H = eps p + v sqrt(1-p^2) cos(2q) + (g/2) p^2
    pdot = 2 v sqrt(1-p^2) sin(2q),  qdot = eps - v p cos(2q)/sqrt(1-p^2) + g p
    Matches the Bloch flow under p = z, 2q = atan2(y, x).
    """
    if abs(p) > 1.0:
        raise DomainError(f"population imbalance must satisfy |p| <= 1, got p={p}")
    one_m = 1.0 - p * p
    if one_m <= 1e-15:
        raise PoleError("qdot singular at the poles |p| = 1")
    root = math.sqrt(one_m)
    c2q, s2q = math.cos(2.0 * q), math.sin(2.0 * q)
    h = params.epsilon * p + params.v * root * c2q + 0.5 * params.g * p * p
    pdot = 2.0 * params.v * root * s2q
    qdot = params.epsilon - params.v * p * c2q / root + params.g * p
    return h, pdot, qdot


def integrate(params: ModelParams, s0, t_end: float, rtol: float = 1e-10,
              atol: float = 1e-12, t_eval=None, detect_period: bool = False) -> Trajectory:
    """Integrate the Bloch flow with an adaptive high-order Runge-Kutta.

    No projection back onto the sphere is applied: norm and energy drift
    are reported as diagnostics, not hidden.  With detect_period=True the
    first return to s0 is located from a Poincare-section event (plane
    through s0 orthogonal to the initial velocity) refined on the dense
    output.
    """
    s0 = np.asarray(s0, dtype=float)
    if abs(np.linalg.norm(s0) - 1.0) > 1e-8:
        raise DomainError(f"initial state must lie on the unit sphere, |s0|={np.linalg.norm(s0)}")

    def rhs(_t, s):
        return bloch_rhs(params, s)

    events = None
    v0 = bloch_rhs(params, s0)
    v0n = np.linalg.norm(v0)
    at_fixed_point = v0n < 1e-12
    if detect_period and not at_fixed_point:
        normal = v0 / v0n

        def section(_t, s):
            return (s - s0) @ normal

        section.direction = 1.0
        events = [section]

    sol = solve_ivp(rhs, (0.0, t_end), s0, method="DOP853", rtol=rtol, atol=atol,
                    t_eval=t_eval, dense_output=detect_period, events=events)
    if not sol.success:
        raise NumericalError(f"integration failed: {sol.message}")

    states = sol.y.T
    norms = np.linalg.norm(states, axis=1)
    e0 = energy(params, s0)
    energies = np.array([energy(params, s) for s in states])
    scale = max(abs(e0), params.v)
    energy_drift = float(np.max(np.abs(energies - e0)) / scale)
    norm_drift = float(np.max(np.abs(norms - 1.0)))

    period = None
    if detect_period and not at_fixed_point and sol.t_events and len(sol.t_events[0]):
        extent = max(float(np.max(np.linalg.norm(states - s0, axis=1))), 1e-12)
        for te in sol.t_events[0]:
            if te <= 1e-12:
                continue
            dist = np.linalg.norm(sol.sol(te) - s0)
            if dist <= max(1e-6, 0.1 * extent):
                period = float(te)
                break
    return Trajectory(sol.t, states, e0, energy_drift, norm_drift, period)


def measure_period(params: ModelParams, s0, rtol: float = 1e-12,
                   t_start: float | None = None, max_doublings: int = 14) -> float:
    """First-return period of the orbit through s0, from the ODE flow alone.

    Doubles the integration horizon until the Poincare event fires;
    raises NumericalError on timeout (e.g. on the separatrix).
    """
    t = t_start if t_start is not None else 10.0 / max(params.v, abs(params.g), 1e-6)
    for _ in range(max_doublings):
        traj = integrate(params, s0, t, rtol=rtol, atol=1e-14, detect_period=True)
        if traj.period is not None:
            return traj.period
        t *= 2.0
    raise NumericalError(
        f"no first return within t={t}; orbit may lie on the separatrix")
