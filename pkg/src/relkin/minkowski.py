"""Minkowski linear algebra on R^4 with signature (-,+,+,+).

Vectors are plain numpy arrays of shape (4,), index 0 timelike.
Endomorphisms are 4x4 arrays acting by ordinary matrix-vector product;
the metric is folded into the outer/wedge constructors so that
composition of maps stays plain matrix multiplication.
"""

from __future__ import annotations

import numpy as np

# Metric diag(-1, 1, 1, 1), kept immutable.
ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)

# Central tolerances for the whole package.
NORM_TOL = 1e-12
MATRIX_TOL = 1e-10

# Below this excess of gamma over 1 two states are treated as equal.
SAME_STATE_TOL = 1e-14


def four_vector(components) -> np.ndarray:
    """Validate and return a finite 4-component float vector."""
    v = np.asarray(components, dtype=float)
    if v.shape != (4,):
        raise ValueError(f"expected 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("four-vector components must be finite")
    return v


def minkowski_dot(u: np.ndarray, v: np.ndarray) -> float:
    """Inner product -u0*v0 + u1*v1 + u2*v2 + u3*v3.

    Written out component-wise so that dot(u, v) == dot(v, u) holds
    exactly in floating point, not just up to rounding.
    """
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3])


def minkowski_norm_sq(v: np.ndarray) -> float:
    return minkowski_dot(v, v)


def state_of_motion(components) -> np.ndarray:
    """Normalized future-pointing unit timelike vector.

    Rejects spacelike or null input instead of projecting it; every
    downstream formula divides by scalar products that degenerate for
    null directions.
    """
    v = four_vector(components)
    nsq = minkowski_dot(v, v)
    if nsq >= 0.0:
        raise ValueError(f"state must be timelike, got norm^2 = {nsq}")
    if v[0] <= 0.0:
        raise ValueError("state must be future-pointing (component 0 > 0)")
    s = v / np.sqrt(-nsq)
    return s


def is_state(v: np.ndarray, tol: float = NORM_TOL) -> bool:
    return v.shape == (4,) and v[0] > 0.0 and abs(minkowski_dot(v, v) + 1.0) <= tol


def outer(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Map w -> eta(v, w) u as a 4x4 matrix."""
    return np.outer(u, ETA @ v)


def wedge(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Antisymmetrized outer product, outer(u, v) - outer(v, u)."""
    return outer(u, v) - outer(v, u)


def projectors(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projectors along span{s} and onto its orthogonal complement.

    Returns (P_par, P_perp) with P_par = -s (x) s and P_perp = id + s (x) s.
    For a unit timelike s these are complementary idempotents.
    """
    ss = outer(s, s)
    return -ss, np.eye(4) + ss


def lie_bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix commutator a b - b a."""
    return a @ b - b @ a


def wedge_bracket(v: np.ndarray, w: np.ndarray, vp: np.ndarray, wp: np.ndarray) -> np.ndarray:
    """Closed form of the commutator [v^w, v'^w'] of two wedges.

    Equals eta(v,w') w^v' + eta(w,v') v^w' - eta(v,v') w^w' - eta(w,w') v^v'.
    Kept as an independent cross-check target for lie_bracket.
    """
    return (
        minkowski_dot(v, wp) * wedge(w, vp)
        + minkowski_dot(w, vp) * wedge(v, wp)
        - minkowski_dot(v, vp) * wedge(w, wp)
        - minkowski_dot(w, wp) * wedge(v, vp)
    )


def gamma_of_states(s: np.ndarray, s1: np.ndarray) -> float:
    """Relative gamma factor -eta(s, s1); >= 1 for unit future states."""
    return -minkowski_dot(s, s1)


def relative_velocity(s: np.ndarray, s1: np.ndarray) -> np.ndarray:
    """Velocity of s1 judged from s, as a tangent vector at s.

    Returns s1/gamma - s with gamma = -eta(s, s1). The result is
    eta-orthogonal to s and has squared norm 1 - 1/gamma^2. For
    gamma - 1 below SAME_STATE_TOL the exact zero vector is returned,
    avoiding catastrophic cancellation between s1/gamma and s.
    """
    gamma = gamma_of_states(s, s1)
    if gamma - 1.0 < SAME_STATE_TOL:
        return np.zeros(4)
    return s1 / gamma - s
