"""Galilei-Newton kinematics in the same 4-vector language.

Here a state of motion is (1, u) with Euclidean velocity u, and the
symmetry group consists of matrices with top row (1, 0, 0, 0), a
rotation in the lower-right block, and an arbitrary spatial column
below the 1. Unlike the relativistic case, the boosts form an abelian
normal subgroup, the quotient onto rotations splits, and the boost
linking two states never depends on the reference state: velocity
composition degenerates to plain vector addition.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

GALILEI_ROW_TOL = 1e-13
GALILEI_ROT_TOL = 1e-10


def galilei_state(u) -> np.ndarray:
    """State of motion with spatial velocity u: the 4-vector (1, u)."""
    u = np.asarray(u, dtype=float)
    if u.shape != (3,):
        raise ValueError(f"expected 3 velocity components, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValueError("velocity components must be finite")
    return np.concatenate(([1.0], u))


def is_galilei_state(s, tol: float = GALILEI_ROW_TOL) -> bool:
    s = np.asarray(s, dtype=float)
    return s.shape == (4,) and bool(np.isfinite(s).all()) and abs(s[0] - 1.0) <= tol


def _check_state(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if not is_galilei_state(s):
        raise ValueError("expected a state of the form (1, u)")
    return s


def galilei_boost(v) -> np.ndarray:
    """Boost adding v to every velocity: identity plus v in the time column."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected 3 velocity components, got shape {v.shape}")
    g = np.eye(4)
    g[1:, 0] = v
    return g


def rotation_part(g) -> np.ndarray:
    """Quotient map onto rotations: the lower-right 3x3 block."""
    return np.asarray(g, dtype=float)[1:, 1:].copy()


def boost_part(g, s) -> np.ndarray:
    """Velocity of the boost factor of g anchored at state s: (g s - s) spatial."""
    g = np.asarray(g, dtype=float)
    s = _check_state(s)
    return (g @ s - s)[1:]


def rotation_embed(s, d) -> np.ndarray:
    """Section of the rotation quotient fixing the state s.

    [[1, 0], [u - D u, D]] for s = (1, u); reduces to the block-diagonal
    embedding at u = 0.
    """
    s = _check_state(s)
    d = np.asarray(d, dtype=float)
    u = s[1:]
    g = np.eye(4)
    g[1:, 1:] = d
    g[1:, 0] = u - d @ u
    return g


def validate_galilei(g) -> np.ndarray:
    """Check membership: exact time row, rotation block, positive orientation."""
    g = np.asarray(g, dtype=float)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("matrix entries must be finite")
    row = np.array([1.0, 0.0, 0.0, 0.0])
    if np.max(np.abs(g[0] - row)) > GALILEI_ROW_TOL:
        raise ValueError("top row must be (1, 0, 0, 0)")
    d = g[1:, 1:]
    if np.max(np.abs(d.T @ d - np.eye(3))) > GALILEI_ROT_TOL:
        raise ValueError("spatial block must be orthogonal")
    if np.linalg.det(d) < 0.0:
        raise ValueError("spatial block must be orientation preserving")
    return g


class GalileiFactors(NamedTuple):
    """g = boost(velocity) @ rotation_embed(s, rotation) for the anchor s."""

    velocity: np.ndarray
    rotation: np.ndarray


def decompose(g, s) -> GalileiFactors:
    """Split g into a boost times a rotation fixing s; exact by construction.

    The rotation factor depends on the anchor s, and so in general does
    the boost velocity; what never depends on s is the boost subgroup
    itself and the velocity linking two given states.
    """
    g = validate_galilei(g)
    s = _check_state(s)
    return GalileiFactors(boost_part(g, s), rotation_part(g))


def galilei_link_velocity(s1, s2) -> np.ndarray:
    """Velocity of the boost taking s1 to s2: plain difference, no reference."""
    s1 = _check_state(s1)
    s2 = _check_state(s2)
    return (s2 - s1)[1:]


def galilei_add(v1, v2) -> np.ndarray:
    """Velocity composition: commutative, associative vector addition."""
    return np.asarray(v1, dtype=float) + np.asarray(v2, dtype=float)


def relative_velocity(s, s1) -> np.ndarray:
    """Velocity of s1 in the frame of s: again the plain difference."""
    return galilei_link_velocity(s, s1)


def sample_galilei(rng: np.random.Generator, speed_scale: float = 2.0) -> np.ndarray:
    """Random group element: normal boost column, uniform-axis rotation block."""
    from .velocity import sample_rotation

    g = np.eye(4)
    g[1:, 1:] = sample_rotation(rng)
    g[1:, 0] = speed_scale * rng.normal(size=3)
    return g


def check_exact_sequence(rng: np.random.Generator, samples: int = 200) -> dict[str, float]:
    """Residuals for the boost-rotation splitting, worst case over samples.

    Checked: boosts compose additively and commute; the rotation map is
    a homomorphism; its kernel is exactly the boosts; the section at a
    random anchor inverts it; boosts form a normal subgroup with
    conjugation acting through the rotation block; and the section at a
    shifted anchor is the boost-conjugate of the original one.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    from .velocity import sample_rotation

    worst = {
        "boost_additive": 0.0,
        "boost_commute": 0.0,
        "quotient_hom": 0.0,
        "kernel_is_boosts": 0.0,
        "section_inverts": 0.0,
        "normality": 0.0,
        "anchor_shift": 0.0,
    }

    def bump(key: str, value: float) -> None:
        worst[key] = max(worst[key], value)

    for _ in range(samples):
        v1 = 2.0 * rng.normal(size=3)
        v2 = 2.0 * rng.normal(size=3)
        g = sample_galilei(rng)
        h = sample_galilei(rng)
        d = sample_rotation(rng)
        s = galilei_state(2.0 * rng.normal(size=3))
        s_shift = galilei_state(s[1:] + 2.0 * rng.normal(size=3))

        b1, b2 = galilei_boost(v1), galilei_boost(v2)
        bump("boost_additive", float(np.max(np.abs(b1 @ b2 - galilei_boost(v1 + v2)))))
        bump("boost_commute", float(np.max(np.abs(b1 @ b2 - b2 @ b1))))
        bump(
            "quotient_hom",
            float(np.max(np.abs(rotation_part(g @ h) - rotation_part(g) @ rotation_part(h)))),
        )
        # an element with trivial rotation block is the boost of its own column
        k = galilei_boost(v1)
        bump(
            "kernel_is_boosts",
            max(
                float(np.max(np.abs(rotation_part(k) - np.eye(3)))),
                float(np.max(np.abs(k - galilei_boost(k[1:, 0])))),
            ),
        )
        bump(
            "section_inverts",
            float(np.max(np.abs(rotation_part(rotation_embed(s, d)) - d))),
        )
        gb = g @ b1 @ np.linalg.inv(g)
        bump(
            "normality",
            float(np.max(np.abs(gb - galilei_boost(rotation_part(g) @ v1)))),
        )
        w = s_shift[1:] - s[1:]
        conj = galilei_boost(w) @ rotation_embed(s, d) @ galilei_boost(-w)
        bump(
            "anchor_shift",
            float(np.max(np.abs(conj - rotation_embed(s_shift, d)))),
        )

    return worst


def adapted_metric(s) -> np.ndarray:
    """Candidate inner product on R^4 tied to the state s.

    Push the standard diag(1, I) form through the boost moving s to
    rest: b^-T diag(1, I) b^-1 with b the boost by the velocity of s.
    The section at s is orthogonal for it; no choice of metric makes a
    nontrivial boost symmetric positive, since boosts are defective.
    """
    s = _check_state(s)
    binv = galilei_boost(-s[1:])  # inverse of the boost by s's velocity
    return binv.T @ binv


def check_metric_splitting(g, s) -> dict[str, float]:
    """Residuals of the factors of g against the s-adapted metric.

    rotation_orthogonal should vanish for every g and s; boost_symmetric
    vanishes only when the boost factor is trivial. Diagnostic only.
    """
    v, d = decompose(g, s)
    m = adapted_metric(s)
    r = rotation_embed(s, d)
    b = galilei_boost(v)
    return {
        "rotation_orthogonal": float(np.max(np.abs(r.T @ m @ r - m))),
        "boost_symmetric": float(np.max(np.abs(m @ b - (m @ b).T))),
    }
