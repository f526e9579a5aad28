"""Small shared numerical helpers (SVD ranks, kernels, entry snapping)."""

from __future__ import annotations

import numpy as np

# Values that orthogonal operations built from the catalog hit exactly.
_SNAP_TARGETS = np.array([0.0, 0.5, 1.0, -0.5, -1.0])


def numeric_rank(matrix: np.ndarray, rtol: float = 1e-8) -> int:
    """Number of singular values above rtol times the largest one."""
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    sigma = np.linalg.svd(a, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rtol * sigma[0]))


def kernel_basis(matrix: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the right kernel, one vector per row.

    A matrix with no rows constrains nothing, so the kernel is the whole
    space and the canonical basis is returned.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2:
        raise ValueError("kernel_basis expects a 2d array")
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols)
    _, sigma, vh = np.linalg.svd(a, full_matrices=True)
    if sigma.size == 0 or sigma[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(sigma > rtol * sigma[0]))
    return vh[rank:].copy()


def snap_matrix(matrix: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Snap entries within tol of 0, +-0.5, +-1 onto those exact values."""
    a = np.array(matrix, dtype=float)
    flat = a.reshape(-1)
    for target in _SNAP_TARGETS:
        near = np.abs(flat - target) <= tol
        flat[near] = target
    return flat.reshape(a.shape)
