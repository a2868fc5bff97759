"""Input validation helpers for the estimator-facing API.

scikit-learn's own ``check_array`` refuses complex data, so the checks the
estimator needs are implemented here: coercion to ``complex128``, shape and
finiteness checks, and the strict-interior requirement of the ball.
"""

from __future__ import annotations

import numpy as np

from .geometry import BallPoint

__all__ = ["check_ball_array", "check_targets"]


def check_ball_array(X, dim: int | None = None, name: str = "X") -> np.ndarray:
    """Coerce to a ``(m, d)`` complex array of points strictly inside the ball.

    Accepts an array-like of row vectors or a sequence of
    :class:`~ballinterp.geometry.BallPoint`.  A single vector is treated as
    one row.  Raises TypeError for non-coercible input and ValueError for
    shape, finiteness, dimension, or ball violations.
    """
    if isinstance(X, (list, tuple)) and X and all(isinstance(p, BallPoint) for p in X):
        X = np.stack([p.coords for p in X])
    try:
        arr = np.asarray(X, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"{name} must be coercible to a complex array: {exc}") from None
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be a nonempty 2-d array, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} must be finite")
    if dim is not None and arr.shape[1] != dim:
        raise ValueError(f"{name} has {arr.shape[1]} features, expected {dim}")
    sq = np.einsum("ij,ij->i", arr, arr.conj()).real
    if np.any(sq >= 1.0):
        bad = int(np.argmax(sq))
        raise ValueError(
            f"{name}[{bad}] lies outside the open unit ball (||x||^2 = {sq[bad]:.6g})"
        )
    return arr


def check_targets(y, n: int, name: str = "y") -> np.ndarray:
    """Coerce targets to a finite complex vector of length ``n``."""
    try:
        arr = np.asarray(y, dtype=np.complex128).ravel()
    except (TypeError, ValueError) as exc:
        raise TypeError(f"{name} must be coercible to a complex vector: {exc}") from None
    if arr.shape[0] != n:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {n}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} must be finite")
    return arr
