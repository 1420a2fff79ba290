"""Hyperbolic geometry carried by the states of motion.

The states form the upper unit hyperboloid, a model of hyperbolic
3-space whose distance is the rapidity of the relative velocity.
Boosts are the exponentials of wedge generators, geodesics are
intersections with timelike planes, and parallel transport along a
geodesic coincides with the action of the boost linking its endpoints.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .boostlink import geodesic_boost
from .lorentz import gamma_of_beta, check_velocity
from .minkowski import gamma_of_states, minkowski_dot, outer, state_of_motion, wedge

SERIES_TOL = 1e-16
SERIES_MAX_TERMS = 60


def _check_frame(s, n) -> tuple[np.ndarray, np.ndarray]:
    s = state_of_motion(s)
    n = np.asarray(n, dtype=float)
    if abs(minkowski_dot(n, n) - 1.0) > 1e-10:
        raise ValueError("direction must be a spacelike unit vector")
    if abs(minkowski_dot(n, s)) > 1e-10:
        raise ValueError("direction must be orthogonal to the state")
    return s, n


def boost_exp(s, n, rho: float) -> np.ndarray:
    """exp(rho s^n) by direct matrix series.

    Terms are accumulated until the max-norm of the next one drops
    below SERIES_TOL; the generator's bounded powers make the series
    converge fast for moderate rapidity.
    """
    s, n = _check_frame(s, n)
    gen = rho * wedge(s, n)
    result = np.eye(4)
    term = np.eye(4)
    for k in range(1, SERIES_MAX_TERMS + 1):
        term = term @ gen / k
        result = result + term
        if np.max(np.abs(term)) < SERIES_TOL:
            break
    else:
        raise RuntimeError(f"series did not converge within {SERIES_MAX_TERMS} terms")
    return result


def boost_exp_closed(s, n, rho: float) -> np.ndarray:
    """exp(rho s^n) in closed form.

    (s^n)^2 = -s(x)s + n(x)n projects onto the plane of s and n, so the
    series splits into identity off the plane plus cosh/sinh inside it.
    """
    s, n = _check_frame(s, n)
    plane = -outer(s, s) + outer(n, n)
    return (
        np.eye(4)
        - plane
        + math.cosh(rho) * plane
        + math.sinh(rho) * wedge(s, n)
    )


def hyperbolic_distance(b1, b2) -> float:
    """Distance between ball points: arccosh(g1 g2 (1 - b1.b2)).

    The argument is the gamma factor of the relative velocity and can
    dip below 1 only through rounding; values in [1 - 1e-12, 1) are
    clamped to 1 and anything lower signals an upstream bug.
    """
    b1 = check_velocity(b1)
    b2 = check_velocity(b2)
    arg = gamma_of_beta(b1) * gamma_of_beta(b2) * (1.0 - float(b1 @ b2))
    if arg < 1.0 - 1e-12:
        raise RuntimeError(f"invalid distance argument {arg} < 1")
    return math.acosh(max(arg, 1.0))


def state_distance(s1, s2) -> float:
    """Geodesic distance between two states: arccosh of their gamma factor."""
    g = gamma_of_states(state_of_motion(s1), state_of_motion(s2))
    if g < 1.0 - 1e-12:
        raise RuntimeError(f"invalid gamma factor {g} < 1")
    return math.acosh(max(g, 1.0))


class GeodesicPath(NamedTuple):
    """Unit-speed geodesic from s1 to s2 on the hyperboloid.

    point(sigma) = cosh(sigma) s1 + sinh(sigma) u for sigma in
    [0, rho12], with u the unit tangent at s1 toward s2.
    """

    s1: np.ndarray
    s2: np.ndarray
    rho12: float
    u: np.ndarray


def geodesic_between(s1, s2) -> GeodesicPath:
    s1 = state_of_motion(s1)
    s2 = state_of_motion(s2)
    g = gamma_of_states(s1, s2)
    if g - 1.0 < 1e-13:
        return GeodesicPath(s1, s2, 0.0, np.zeros(4))
    u = (s2 - g * s1) / math.sqrt(g * g - 1.0)
    return GeodesicPath(s1, s2, math.acosh(g), u)


def geodesic_point(path: GeodesicPath, sigma: float) -> np.ndarray:
    return math.cosh(sigma) * path.s1 + math.sinh(sigma) * path.u


def geodesic_velocity(path: GeodesicPath, sigma: float) -> np.ndarray:
    return math.sinh(sigma) * path.s1 + math.cosh(sigma) * path.u


def parallel_transport_numeric(path: GeodesicPath, y1, steps: int = 1000) -> np.ndarray:
    """Transport tangent y1 from s1 to s2 by integrating the transport law.

    dY/dsigma = eta(Y, gdot) g along the geodesic g(sigma), integrated
    with classic fourth-order Runge-Kutta on a uniform grid. y1 must be
    tangent at s1 (eta-orthogonal to it).
    """
    y1 = np.asarray(y1, dtype=float)
    if abs(minkowski_dot(y1, path.s1)) > 1e-10:
        raise ValueError("initial vector must be tangent at the start state")
    if steps < 10:
        raise ValueError("need at least 10 integration steps")
    if path.rho12 == 0.0:
        return y1.copy()

    def rhs(sigma: float, y: np.ndarray) -> np.ndarray:
        gdot = geodesic_velocity(path, sigma)
        return minkowski_dot(y, gdot) * geodesic_point(path, sigma)

    h = path.rho12 / steps
    y = y1.copy()
    for i in range(steps):
        sigma = i * h
        k1 = rhs(sigma, y)
        k2 = rhs(sigma + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(sigma + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(sigma + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def transport_by_boost(path: GeodesicPath, y1) -> np.ndarray:
    """Closed-form transport: act with the boost taking s1 to s2."""
    y1 = np.asarray(y1, dtype=float)
    if path.rho12 == 0.0:
        return y1.copy()
    return geodesic_boost(path.s1, path.s2) @ y1


def tangent_basis(s) -> np.ndarray:
    """Three eta-orthonormal spacelike vectors tangent at s (rows).

    Gram-Schmidt of the spatial axes against s under eta; useful for
    building arbitrary tangent vectors in tests.
    """
    s = state_of_motion(s)
    basis = []
    candidates = [
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, 1.0, 0.0]),
        np.array([0.0, 0.0, 0.0, 1.0]),
        np.array([1.0, 0.0, 0.0, 0.0]),
    ]
    for c in candidates:
        v = c + minkowski_dot(c, s) * s  # remove the timelike component
        for b in basis:
            v = v - minkowski_dot(v, b) * b
        nsq = minkowski_dot(v, v)
        if nsq > 1e-12:
            basis.append(v / math.sqrt(nsq))
        if len(basis) == 3:
            break
    if len(basis) != 3:
        raise RuntimeError("failed to complete a tangent basis")
    return np.array(basis)
