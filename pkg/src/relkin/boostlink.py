"""Boosts linking two states of motion as seen from a third.

A reference state s and two targets s1, s2 determine a unique boost
with respect to s that maps s1 to s2. Everything about that boost (its
gamma factor, velocity, and matrix) is a rational expression in the
three pairwise gamma factors and the state vectors themselves, with the
single square root confined to the unit direction vector. The tilt
functions quantify how the linking gamma degrades as the reference
leaves the plane of s1 and s2.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .minkowski import (
    MATRIX_TOL,
    gamma_of_states,
    minkowski_dot,
    outer,
    state_of_motion,
    wedge,
)

# Below this excess over 1, the two linked states are treated as equal
# and the link collapses to the identity.
LINK_DEGENERATE_TOL = 1e-13


class StateTriple(NamedTuple):
    s: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    gamma1: float
    gamma2: float
    gamma12: float


def state_triple(s, s1, s2) -> StateTriple:
    """Validate and normalize three states and cache their pairwise gammas."""
    s = state_of_motion(s)
    s1 = state_of_motion(s1)
    s2 = state_of_motion(s2)
    return StateTriple(
        s,
        s1,
        s2,
        gamma_of_states(s, s1),
        gamma_of_states(s, s2),
        gamma_of_states(s1, s2),
    )


def link_gamma(t: StateTriple) -> float:
    """Gamma factor of the boost w.r.t. s taking s1 to s2.

    (g1^2 + g2^2 + g12 - 1) / (1 + 2 g1 g2 - g12). The denominator
    equals 1 + g1 g2 (1 + beta1.beta2) and never drops below 1.
    """
    num = t.gamma1 ** 2 + t.gamma2 ** 2 + t.gamma12 - 1.0
    den = 1.0 + 2.0 * t.gamma1 * t.gamma2 - t.gamma12
    return num / den


def perp_difference(t: StateTriple) -> np.ndarray:
    """Component of s2 - s1 orthogonal to s (a spacelike 4-vector)."""
    return t.s2 - t.s1 - (t.gamma2 - t.gamma1) * t.s


def perp_difference_norm_sq(t: StateTriple) -> float:
    """Closed form g1^2 + g2^2 + 2(g12 - g1 g2 - 1) for |perp diff|^2."""
    return t.gamma1 ** 2 + t.gamma2 ** 2 + 2.0 * (t.gamma12 - t.gamma1 * t.gamma2 - 1.0)


def link_velocity(t: StateTriple) -> np.ndarray:
    """Velocity of the linking boost, as a 4-vector orthogonal to s.

    (g1 + g2) / (g1^2 + g2^2 + g12 - 1) times the perpendicular part of
    s2 - s1. Swapping s1 and s2 flips the sign.
    """
    if t.gamma12 - 1.0 < LINK_DEGENERATE_TOL:
        return np.zeros(4)
    coeff = (t.gamma1 + t.gamma2) / (t.gamma1 ** 2 + t.gamma2 ** 2 + t.gamma12 - 1.0)
    return coeff * perp_difference(t)


def link_boost(t: StateTriple) -> np.ndarray:
    """The boost w.r.t. s mapping s1 to s2, rational in the inputs.

    id + [2(1-g12) s(x)s + d(x)d + 2 g1 s(x)d - 2 g2 d(x)s] / q with
    d = s2 - s1 and q = 1 + 2 g1 g2 - g12, where (x) is the
    eta-contracted outer product. Nearly equal targets give the
    identity.
    """
    if t.gamma12 - 1.0 < LINK_DEGENERATE_TOL:
        return np.eye(4)
    d = t.s2 - t.s1
    q = 1.0 + 2.0 * t.gamma1 * t.gamma2 - t.gamma12
    corr = (
        2.0 * (1.0 - t.gamma12) * outer(t.s, t.s)
        + outer(d, d)
        + 2.0 * t.gamma1 * outer(t.s, d)
        - 2.0 * t.gamma2 * outer(d, t.s)
    )
    return np.eye(4) + corr / q


def link_direction(t: StateTriple) -> np.ndarray:
    """Unit spacelike direction of the linking boost.

    sqrt((g+1)/(g-1)) / (g1 + g2) times the perpendicular part of
    s2 - s1, where g is the linking gamma. Undefined for coincident
    targets.
    """
    g = link_gamma(t)
    if g - 1.0 < LINK_DEGENERATE_TOL:
        raise ValueError("direction undefined for coincident linked states")
    scale = math.sqrt((g + 1.0) / (g - 1.0)) / (t.gamma1 + t.gamma2)
    return scale * perp_difference(t)


def boost_from_velocity(s, beta4) -> np.ndarray:
    """Boost w.r.t. state s with velocity beta4 (a 4-vector orthogonal to s).

    id + (g-1)(-s(x)s + n(x)n) + beta g (s(x)n - n(x)s) where beta is
    the Minkowski length of beta4 and n its unit vector. beta4 = 0
    gives the identity.
    """
    s = state_of_motion(s)
    beta4 = np.asarray(beta4, dtype=float)
    if abs(minkowski_dot(s, beta4)) > 1e-10:
        raise ValueError("boost velocity must be orthogonal to the reference state")
    bsq = minkowski_dot(beta4, beta4)
    if bsq < 0.0:
        raise ValueError("boost velocity must be spacelike")
    beta = math.sqrt(bsq)
    if beta == 0.0:
        return np.eye(4)
    if beta >= 1.0:
        raise ValueError(f"boost speed {beta} >= 1")
    n = beta4 / beta
    g = 1.0 / math.sqrt(1.0 - bsq)
    return (
        np.eye(4)
        + (g - 1.0) * (-outer(s, s) + outer(n, n))
        + beta * g * (wedge(s, n))
    )


def geodesic_boost(s1, s2) -> np.ndarray:
    """The boost w.r.t. s1 that maps s1 to s2.

    id + [s1(x)s1 + s2(x)s2 + s1^s2 - 2 g12 s2(x)s1] / (1 + g12).
    Equals the linking boost of the degenerate triple (s1, s1, s2).
    """
    s1 = state_of_motion(s1)
    s2 = state_of_motion(s2)
    g12 = gamma_of_states(s1, s2)
    if g12 - 1.0 < LINK_DEGENERATE_TOL:
        return np.eye(4)
    corr = (
        outer(s1, s1)
        + outer(s2, s2)
        + wedge(s1, s2)
        - 2.0 * g12 * outer(s2, s1)
    )
    return np.eye(4) + corr / (1.0 + g12)


def check_equivariance(t: StateTriple, L: np.ndarray) -> float:
    """Max-norm residual of L beta(s, s1, s2) vs beta(Ls, Ls1, Ls2)."""
    mapped = state_triple(L @ t.s, L @ t.s1, L @ t.s2)
    return float(np.max(np.abs(link_velocity(mapped) - L @ link_velocity(t))))


def plane_projector(s1, s2) -> np.ndarray:
    """Projector onto the timelike plane spanned by s1 and s2.

    [s1(x)s1 + s2(x)s2 - g12 (s1(x)s2 + s2(x)s1)] / (g12^2 - 1).
    Rejects (near-)parallel states, whose span is not a plane.
    """
    s1 = state_of_motion(s1)
    s2 = state_of_motion(s2)
    g12 = gamma_of_states(s1, s2)
    if g12 - 1.0 < 1e-12:
        raise ValueError("states too close to span a plane")
    num = (
        outer(s1, s1)
        + outer(s2, s2)
        - g12 * (outer(s1, s2) + outer(s2, s1))
    )
    return num / (g12 ** 2 - 1.0)


def perp_norm_sq(t: StateTriple) -> float:
    """Squared Minkowski norm of the part of s outside the s1-s2 plane.

    (1 - g1^2 - g2^2 - g12^2 + 2 g1 g2 g12) / (g12^2 - 1); zero exactly
    when s lies in the plane of s1 and s2.
    """
    num = (
        1.0
        - t.gamma1 ** 2
        - t.gamma2 ** 2
        - t.gamma12 ** 2
        + 2.0 * t.gamma1 * t.gamma2 * t.gamma12
    )
    return num / (t.gamma12 ** 2 - 1.0)


def tilt_gamma(t: StateTriple) -> tuple[float, float]:
    """Linking gamma expressed through the out-of-plane content of s.

    Returns (gamma, perp_sq) with
    gamma = g12 - perp_sq (g12^2 - 1) / (1 + 2 g1 g2 - g12), so
    gamma <= g12 with equality exactly in the plane. Cross-checked
    against the direct rational form; disagreement indicates a bug.
    """
    psq = perp_norm_sq(t)
    den = 1.0 + 2.0 * t.gamma1 * t.gamma2 - t.gamma12
    g = t.gamma12 - psq * (t.gamma12 ** 2 - 1.0) / den
    direct = link_gamma(t)
    if abs(g - direct) > 1e-11 * max(1.0, abs(direct)):
        raise RuntimeError(
            f"tilt route {g} and rational route {direct} disagree"
        )
    return g, psq


def tilt_min_gamma_star(g12: float) -> float:
    """Smallest symmetric-reference gamma able to see both targets: sqrt((1+g12)/2)."""
    if g12 < 1.0:
        raise ValueError(f"gamma12 {g12} < 1")
    return math.sqrt((1.0 + g12) / 2.0)


def tilt_curve_gamma_star(g12: float, g_star: float) -> float:
    """Linking gamma for a symmetric reference with gamma factor g_star to both targets.

    (2 g*^2 + g12 - 1) / (2 g*^2 - g12 + 1), strictly decreasing in g*,
    equal to g12 at the minimal g* and approaching 1 as g* grows.
    """
    if g12 < 1.0:
        raise ValueError(f"gamma12 {g12} < 1")
    lo = tilt_min_gamma_star(g12)
    if g_star < lo - 1e-12:
        raise ValueError(f"gamma* {g_star} below the reachable minimum {lo}")
    g_star = max(g_star, lo)
    return (2.0 * g_star ** 2 + g12 - 1.0) / (2.0 * g_star ** 2 - g12 + 1.0)


def tilt_curve_phi(g12: float, phi: float) -> float:
    """Linking gamma for a symmetric reference seeing the targets at angle phi.

    (g12 (3 - cos phi) - cos phi - 1) / (g12 (1 + cos phi) - 3 cos phi + 1),
    strictly increasing from 1 at phi = 0 to g12 at phi = pi.
    """
    if g12 < 1.0:
        raise ValueError(f"gamma12 {g12} < 1")
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"phi {phi} outside [0, pi]")
    c = math.cos(phi)
    return (g12 * (3.0 - c) - c - 1.0) / (g12 * (1.0 + c) - 3.0 * c + 1.0)


def gamma12_from_gamma_star_phi(g_star: float, phi: float) -> float:
    """Target-pair gamma implied by a symmetric reference: g*^2 (1-cos phi) + cos phi."""
    c = math.cos(phi)
    return g_star ** 2 * (1.0 - c) + c


def gamma_star_sq_from_gamma12_phi(g12: float, phi: float) -> float:
    """Symmetric-reference gamma^2 needed to see the targets at angle phi."""
    c = math.cos(phi)
    if 1.0 - c < 1e-15:
        raise ValueError("phi = 0 leaves gamma* unconstrained")
    return (g12 - c) / (1.0 - c)


def tilt_scan(
    g12: float,
    parametrization: str = "gamma_star",
    samples: int = 100,
    upper: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Sample one tilt curve; returns (parameter values, linking gammas).

    parametrization "gamma_star" sweeps the symmetric-reference gamma
    from its minimum to upper (default 20x the minimum);
    "phi" sweeps the viewing angle over [0, pi] and ignores upper.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    if parametrization == "gamma_star":
        lo = tilt_min_gamma_star(g12)
        hi = 20.0 * lo if upper is None else float(upper)
        if hi <= lo:
            raise ValueError(f"upper bound {hi} must exceed the minimum {lo}")
        params = np.linspace(lo, hi, samples)
        gammas = np.array([tilt_curve_gamma_star(g12, p) for p in params])
    elif parametrization == "phi":
        params = np.linspace(0.0, math.pi, samples)
        gammas = np.array([tilt_curve_phi(g12, p) for p in params])
    else:
        raise ValueError(f"unknown parametrization {parametrization!r}")
    return params, gammas


def sample_state(rng: np.random.Generator, gamma_max: float = 1e3) -> np.ndarray:
    """Random state of motion: uniform direction, gamma log-uniform."""
    from .velocity import sample_velocity

    b = sample_velocity(rng, gamma_max)
    g = 1.0 / math.sqrt(1.0 - float(b @ b))
    return np.array([g, g * b[0], g * b[1], g * b[2]])


def symmetric_reference(
    s1, s2, g_star: float, out_of_plane: np.ndarray | None = None
) -> np.ndarray:
    """A state with equal gamma g_star to both of s1 and s2.

    The in-plane component is fixed by symmetry; any leftover gamma
    budget goes to the direction out_of_plane (default: a fixed
    eta-orthonormal completion). Used to realize tilt-curve points with
    concrete states.
    """
    s1 = state_of_motion(s1)
    s2 = state_of_motion(s2)
    g12 = gamma_of_states(s1, s2)
    lo = tilt_min_gamma_star(g12)
    if g_star < lo - 1e-12:
        raise ValueError(f"gamma* {g_star} below the reachable minimum {lo}")
    g_star = max(g_star, lo)
    # s = a (s1 + s2) + w with w eta-orthogonal to the plane:
    # -s.s1 = a (1 + g12) = g_star fixes a; eta(s,s) = -1 fixes eta(w,w).
    a = g_star / (1.0 + g12)
    base = a * (s1 + s2)
    wsq_needed = -1.0 - minkowski_dot(base, base)  # eta(w,w), must be >= 0
    if wsq_needed < -1e-12:
        raise ValueError("no state with that symmetric gamma exists")
    wsq_needed = max(wsq_needed, 0.0)
    if wsq_needed == 0.0:
        return state_of_motion(base)
    proj = plane_projector(s1, s2)
    perp = np.eye(4) - proj
    if out_of_plane is None:
        w = None
        for trial in (np.array([0.0, 0.0, 0.0, 1.0]), np.array([0.0, 0.0, 1.0, 0.0]),
                      np.array([0.0, 1.0, 0.0, 0.0])):
            cand = perp @ trial
            if minkowski_dot(cand, cand) > 1e-10:
                w = cand
                break
        if w is None:
            raise RuntimeError("could not find an out-of-plane direction")
    else:
        w = perp @ np.asarray(out_of_plane, dtype=float)
        if minkowski_dot(w, w) <= 1e-10:
            raise ValueError("out_of_plane direction lies in the plane")
    w = w / math.sqrt(minkowski_dot(w, w))
    s = base + math.sqrt(wsq_needed) * w
    return state_of_motion(s)


def is_boost_matrix(L: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    """Whether L is a pure boost w.r.t. the standard rest state: symmetric Lorentz."""
    from .lorentz import is_lorentz

    return bool(is_lorentz(L, tol) and np.max(np.abs(L - L.T)) <= tol)
