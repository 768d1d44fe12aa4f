"""Dense real-matrix kernel for the route models.

Route models need one inverse of (I - Q) per demand point; Q stays below a
few hundred rows, so a partially pivoted elimination is ample.
"""
from __future__ import annotations

import numpy as np

PIVOT_FLOOR = 1e-14


class SingularMatrixError(ValueError):
    pass


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("matmul expects 2-d matrices")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    return a @ b


def invert(a: np.ndarray) -> np.ndarray:
    """Inverse via row elimination with partial pivoting.

    Raises SingularMatrixError when a pivot falls below 1e-14 (relative to
    the matrix scale), to surface singular or near-singular inputs.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape}")
    n = a.shape[0]
    scale = max(np.abs(a).max(), 1.0)
    aug = np.hstack([a.copy(), np.eye(n)])
    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(aug[k:, k])))
        pivot = aug[pivot_row, k]
        if abs(pivot) < PIVOT_FLOOR * scale:
            raise SingularMatrixError(f"pivot {pivot:.3e} below threshold at step {k}")
        if pivot_row != k:
            aug[[k, pivot_row]] = aug[[pivot_row, k]]
        aug[k] /= aug[k, k]
        others = np.arange(n) != k
        aug[others] -= np.outer(aug[others, k], aug[k])
    return aug[:, n:]
