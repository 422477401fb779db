"""Complete elliptic integrals of the first and second kind.

Both functions use the parameter convention m = k^2 throughout.  Every
caller in this package documents whether it passes m or 1/m (the
rotation-period formula passes 1/m).
"""
import math

from .errors import DomainError

# AGM is quadratically convergent; 64 iterations is an unreachable
# safety bound.
_MAX_ITER = 64
_REL_TOL = 1e-15


def elliptic_k(m: float) -> float:
    """K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t), for m < 1.

    Evaluated by the arithmetic-geometric mean: K = pi / (2 agm(1, sqrt(1-m))).
    Raises DomainError for m >= 1 (logarithmic divergence at m = 1).
    """
    if m >= 1.0:
        raise DomainError(f"elliptic_k requires m < 1, got m={m} (period diverges at m=1)")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(_MAX_ITER):
        if abs(a - b) <= _REL_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def elliptic_e(m: float) -> float:
    """E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt, for m <= 1.

    AGM evaluation: E = K (1 - sum_n 2^{n-1} c_n^2) with c_0^2 = m.
    """
    if m > 1.0:
        raise DomainError(f"elliptic_e requires m <= 1, got m={m}")
    if m == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt(1.0 - m)
    csum = 0.5 * m
    factor = 0.5
    for _ in range(_MAX_ITER):
        if abs(a - b) <= _REL_TOL * a:
            break
        c = 0.5 * (a - b)
        factor *= 2.0
        csum += factor * c * c
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    k = math.pi / (2.0 * a)
    return k * (1.0 - csum)
