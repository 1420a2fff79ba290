"""Proper-orthochronous Lorentz matrices and their polar decomposition.

A Lorentz matrix L is stored as a plain 4x4 array satisfying
L^T eta L = eta with det L = +1 and L[0,0] >= 1. In block form

    L = [[c, a^T],
         [b, M  ]]

with c a scalar, a and b 3-vectors and M a 3x3 block; the six block
relations tie these together and drive the closed-form polar split
L = B(beta) R(D) into a boost times a spatial rotation.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .minkowski import ETA, MATRIX_TOL

# Velocities at or beyond this norm are rejected: the gamma factor
# overflows silently otherwise and poisons every downstream formula.
BETA_MAX = 1.0 - 1e-12


class PolarFactors(NamedTuple):
    """Factors of L = boost(beta) @ embed_rotation(rotation).

    beta_prime is the boost velocity of the reversed-order split
    L = embed_rotation(rotation) @ boost(beta_prime); the two are
    related by beta = rotation @ beta_prime.
    """

    beta: np.ndarray
    rotation: np.ndarray
    beta_prime: np.ndarray


def check_velocity(beta) -> np.ndarray:
    b = np.asarray(beta, dtype=float)
    if b.shape != (3,):
        raise ValueError(f"expected a 3-velocity, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("velocity components must be finite")
    if np.linalg.norm(b) >= BETA_MAX:
        raise ValueError(f"speed {np.linalg.norm(b)} is not inside the open unit ball")
    return b


def gamma_of_beta(beta) -> float:
    b = np.asarray(beta, dtype=float)
    return 1.0 / np.sqrt(1.0 - float(b @ b))


def boost(beta) -> np.ndarray:
    """Pure boost with velocity beta (3-vector, |beta| < 1).

    The spatial block is E3 + gamma^2/(1+gamma) beta beta^T, which is
    the smooth rewriting of (gamma-1) n n^T and stays regular at
    beta = 0. The result is symmetric positive-definite.
    """
    b = check_velocity(beta)
    gamma = gamma_of_beta(b)
    L = np.empty((4, 4))
    L[0, 0] = gamma
    L[0, 1:] = gamma * b
    L[1:, 0] = gamma * b
    L[1:, 1:] = np.eye(3) + (gamma * gamma / (1.0 + gamma)) * np.outer(b, b)
    return L


def check_rotation(d, tol: float = MATRIX_TOL) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {d.shape}")
    if np.max(np.abs(d.T @ d - np.eye(3))) > tol:
        raise ValueError("matrix is not orthogonal within tolerance")
    if abs(np.linalg.det(d) - 1.0) > tol:
        raise ValueError("matrix is orthogonal but not proper (det != +1)")
    return d


def embed_rotation(d) -> np.ndarray:
    """Embed D in SO(3) as the Lorentz matrix block-diag(1, D)."""
    d = check_rotation(d)
    L = np.zeros((4, 4))
    L[0, 0] = 1.0
    L[1:, 1:] = d
    return L


def is_lorentz(L: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    if L.shape != (4, 4):
        return False
    if np.max(np.abs(L.T @ ETA @ L - ETA)) > tol:
        return False
    if abs(np.linalg.det(L) - 1.0) > tol:
        return False
    return L[0, 0] >= 1.0 - tol


def validate_lorentz(L: np.ndarray, tol: float = MATRIX_TOL) -> np.ndarray:
    L = np.asarray(L, dtype=float)
    if L.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {L.shape}")
    if np.max(np.abs(L.T @ ETA @ L - ETA)) > tol:
        raise ValueError("matrix does not preserve the metric within tolerance")
    if abs(np.linalg.det(L) - 1.0) > tol:
        raise ValueError("matrix is not proper (det != +1)")
    if L[0, 0] < 1.0 - tol:
        raise ValueError("matrix is not orthochronous (entry [0,0] < 1)")
    return L


def validate_blocks(L: np.ndarray) -> dict[str, float]:
    """Residuals of the six block relations of a Lorentz matrix.

    Diagnostic only; nothing is raised. Keys name the relation checked:
    norms of the first column/row against c^2 - 1, the mixed products
    M^T b = c a and M a = c b, and the two Gram identities.
    """
    c = L[0, 0]
    a = L[0, 1:]
    b = L[1:, 0]
    M = L[1:, 1:]
    e3 = np.eye(3)
    return {
        "norm_b": abs(float(b @ b) - (c * c - 1.0)),
        "norm_a": abs(float(a @ a) - (c * c - 1.0)),
        "MT_b": float(np.max(np.abs(M.T @ b - c * a))),
        "M_a": float(np.max(np.abs(M @ a - c * b))),
        "MT_M": float(np.max(np.abs(M.T @ M - (e3 + np.outer(a, a))))),
        "M_MT": float(np.max(np.abs(M @ M.T - (e3 + np.outer(b, b))))),
    }


def jacobi_eigh(a: np.ndarray, off_tol: float = 1e-14, max_sweeps: int = 50):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Rotations are applied over all (p, q) pairs per sweep until every
    off-diagonal entry drops below off_tol relative to the Frobenius
    norm, or max_sweeps is reached. Returns (eigenvalues ascending,
    matrix of column eigenvectors).
    """
    A = np.array(a, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    stop = off_tol * max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= stop:
                    continue
                off = max(off, abs(apq))
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                A = rot.T @ A @ rot
                V = V @ rot
        if off <= stop:
            break
    order = np.argsort(np.diag(A))
    return np.diag(A)[order], V[:, order]


def symmetric_sqrt(a: np.ndarray, asym_tol: float = 1e-9) -> np.ndarray:
    """Unique symmetric positive-definite square root of a.

    Input must be symmetric (asymmetry above asym_tol is rejected) with
    strictly positive eigenvalues. Computed from the Jacobi
    eigendecomposition by taking square roots of the eigenvalues.
    """
    a = np.asarray(a, dtype=float)
    if np.max(np.abs(a - a.T)) > asym_tol:
        raise ValueError("matrix is not symmetric within tolerance")
    evals, vecs = jacobi_eigh(a)
    if np.any(evals <= 0.0):
        raise ValueError(f"matrix is not positive-definite, eigenvalues {evals}")
    return vecs @ np.diag(np.sqrt(evals)) @ vecs.T


def polar_decompose(L: np.ndarray) -> PolarFactors:
    """Split L into boost times rotation using the block closed form.

    With blocks (c, a, b, M): beta = b/c, D = M - (b a^T)/(c+1), and
    beta' = a/c parametrizes the reversed-order split. Rational in the
    entries of L; no square roots or eigen-solves involved.
    """
    L = np.asarray(L, dtype=float)
    c = L[0, 0]
    if c < 1.0:
        raise ValueError(f"entry [0,0] = {c} < 1; not an orthochronous matrix")
    a = L[0, 1:]
    b = L[1:, 0]
    M = L[1:, 1:]
    D = M - np.outer(b, a) / (c + 1.0)
    return PolarFactors(beta=b / c, rotation=D, beta_prime=a / c)


def polar_factors_via_sqrt(L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Polar split via the symmetric square root, as full matrices.

    Returns (B, R) with B = sqrt(L L^T) and R = B^{-1} L. Serves as the
    independent verification route for polar_decompose; the two must
    agree for genuine Lorentz input.
    """
    L = np.asarray(L, dtype=float)
    B = symmetric_sqrt(L @ L.T)
    R = np.linalg.solve(B, L)
    return B, R


def boost_eigenvalues(speed: float) -> np.ndarray:
    """Eigenvalues {sqrt((1+b)/(1-b)), sqrt((1-b)/(1+b)), 1, 1} ascending."""
    lam = np.sqrt((1.0 + speed) / (1.0 - speed))
    return np.sort(np.array([lam, 1.0 / lam, 1.0, 1.0]))


def to_matrix(beta, rotation) -> np.ndarray:
    """Matrix of the pair (beta, D), i.e. boost(beta) @ embed_rotation(D)."""
    return boost(beta) @ embed_rotation(rotation)


def compose(l1: tuple, l2: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Compose two (beta, D) pairs without forming 4x4 products.

    Parameters multiply as beta = beta1 (+) D1 beta2 and
    D = T[beta1, D1 beta2] D1 D2, where (+) is Einstein addition and T
    the Thomas rotation. Matches polar_decompose of the matrix product.
    """
    from . import velocity  # deferred: velocity imports this module

    beta1, d1 = l1
    beta2, d2 = l2
    b2r = np.asarray(d1, dtype=float) @ np.asarray(beta2, dtype=float)
    beta = velocity.einstein_add(beta1, b2r)
    d = velocity.thomas_rotation(beta1, b2r).matrix @ d1 @ d2
    return beta, d


def invert(l: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Inverse pair (-D^{-1} beta, D^{-1}) of (beta, D)."""
    beta, d = l
    d = np.asarray(d, dtype=float)
    return -(d.T @ np.asarray(beta, dtype=float)), d.T
