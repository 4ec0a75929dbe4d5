"""Closed-form output-weight computation.

Training never iterates: weights solve a least-squares or ridge system in one
shot. The ridge solution has two algebraically identical forms,

    dual    w = G^T (gamma*I_S + G G^T)^{-1} Phi      (S x S system)
    primal  w = (gamma*I_L + G^T G)^{-1} G^T Phi      (L x L system)

and ``ridge_weights`` picks whichever inverts the smaller matrix: dual when
S <= L, primal when S > L.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import linalg

from gegnet.exceptions import (
    ConditioningError,
    DegenerateMatrixError,
    InvalidParameterError,
    ShapeError,
)

__all__ = [
    "EPS_RANK",
    "pinv_weights",
    "ridge_weights_dual",
    "ridge_weights_primal",
    "ridge_weights",
    "ridge_branch",
]

logger = logging.getLogger(__name__)

# Relative singular-value cutoff for the pseudo-inverse path.
EPS_RANK = 1e-12


def _as_targets(G: np.ndarray, Phi: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    G = np.asarray(G, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    if G.ndim != 2:
        raise ShapeError(f"activation matrix must be 2-D, got ndim={G.ndim}")
    squeeze = Phi.ndim == 1
    if squeeze:
        Phi = Phi[:, None]
    if Phi.ndim != 2 or Phi.shape[0] != G.shape[0]:
        raise ShapeError(
            f"target matrix of shape {Phi.shape} does not match {G.shape[0]} samples"
        )
    return G, Phi, squeeze


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not gamma > 0.0:
        raise InvalidParameterError(f"ridge regularizer must be > 0, got {gamma}")
    return gamma


def pinv_weights(G: np.ndarray, Phi: np.ndarray) -> np.ndarray:
    """Minimum-norm least-squares weights via the pseudo-inverse of ``G``.

    Singular values below ``EPS_RANK`` times the largest are treated as zero.
    """
    G, Phi, squeeze = _as_targets(G, Phi)
    if not G.any():
        raise DegenerateMatrixError("activation matrix is all zeros")
    w, _, _, _ = np.linalg.lstsq(G, Phi, rcond=EPS_RANK)
    return w[:, 0] if squeeze else w


def _cho_solve_spd(A: np.ndarray, B: np.ndarray, gamma: float) -> np.ndarray:
    try:
        factor = linalg.cho_factor(A, overwrite_a=True)
        return linalg.cho_solve(factor, B)
    except linalg.LinAlgError as exc:
        raise ConditioningError(
            f"symmetric factorization failed for gamma={gamma} "
            f"on a {A.shape[0]}x{A.shape[0]} system"
        ) from exc


def ridge_weights_dual(G: np.ndarray, Phi: np.ndarray, gamma: float) -> np.ndarray:
    """Ridge weights through the S x S system: w = G^T (gamma*I + G G^T)^{-1} Phi."""
    gamma = _check_gamma(gamma)
    G, Phi, squeeze = _as_targets(G, Phi)
    A = G @ G.T
    A[np.diag_indices_from(A)] += gamma
    alpha = _cho_solve_spd(A, Phi, gamma)
    w = G.T @ alpha
    return w[:, 0] if squeeze else w


def ridge_weights_primal(G: np.ndarray, Phi: np.ndarray, gamma: float) -> np.ndarray:
    """Ridge weights through the L x L system: w = (gamma*I + G^T G)^{-1} G^T Phi."""
    gamma = _check_gamma(gamma)
    G, Phi, squeeze = _as_targets(G, Phi)
    A = G.T @ G
    A[np.diag_indices_from(A)] += gamma
    w = _cho_solve_spd(A, G.T @ Phi, gamma)
    return w[:, 0] if squeeze else w


def ridge_branch(n_samples: int, n_features: int) -> str:
    """Which ridge form inverts the smaller matrix; ties go to the dual."""
    return "dual" if n_samples <= n_features else "primal"


def ridge_weights(G: np.ndarray, Phi: np.ndarray, gamma: float) -> np.ndarray:
    """Ridge weights via whichever branch inverts the smaller matrix."""
    G = np.asarray(G, dtype=float)
    if G.ndim != 2:
        raise ShapeError(f"activation matrix must be 2-D, got ndim={G.ndim}")
    branch = ridge_branch(G.shape[0], G.shape[1])
    logger.info(
        "ridge solve: %s branch (S=%d, L=%d, gamma=%g)", branch, G.shape[0], G.shape[1], gamma
    )
    if branch == "dual":
        return ridge_weights_dual(G, Phi, gamma)
    return ridge_weights_primal(G, Phi, gamma)
