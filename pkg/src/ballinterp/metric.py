"""Pseudohyperbolic metric on the ball and separation reports.

The distance between ``x`` and ``y`` has two equivalent computations:

* ``pseudohyperbolic``: the closed form

      rho(x, y)^2 = 1 - (1 - ||x||^2)(1 - ||y||^2) / |1 - inner(x, y)|^2,

  which is the primary path used everywhere in the package, and
* ``pseudohyperbolic_via_automorphism``: ``||ball_automorphism(y, x)||``,
  kept as an independent cross check of the closed form.

Both are symmetric, automorphism invariant, and valued in ``[0, 1)`` on the
open ball.  ``automorphism_inner_product`` generalizes the closed form to
the full inner product ``inner(phi_c(x), phi_c(z))`` without evaluating any
automorphism; specializing ``z = x`` recovers ``rho(x, c)^2``.

Separation of a finite node sequence is measured by ``carleson_delta``: the
smallest over ``j`` of ``prod_{k != j} rho(x_k, x_j)``.  A strictly positive
value is exactly the condition under which the interpolation basis built in
:mod:`ballinterp.beurling` exists with a finite sup bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES
from .geometry import BallPoint, VectorLike, inner

__all__ = [
    "CarlesonReport",
    "HaymanNewmanReport",
    "pseudohyperbolic",
    "pseudohyperbolic_via_automorphism",
    "pseudohyperbolic_pairs",
    "pseudohyperbolic_pairs_via_automorphism",
    "pairwise_pseudohyperbolic",
    "automorphism_inner_product",
    "carleson_delta",
    "hayman_newman_check",
]


def _as_ball_point(x: VectorLike) -> BallPoint:
    return x if isinstance(x, BallPoint) else BallPoint(x)


def pseudohyperbolic(x: VectorLike, y: VectorLike) -> float:
    """Pseudohyperbolic distance via the closed form.

    The square ``1 - ratio`` is clamped to ``[0, 1]`` before the square
    root: for coincident points rounding may leave ``ratio`` a few ulp on
    either side of 1, and the clamp pins the distance to exactly 0 there.

    Returns
    -------
    float
        ``rho(x, y)`` in ``[0, 1)``.
    """
    xp = _as_ball_point(x)
    yp = _as_ball_point(y)
    d = 1.0 - inner(xp, yp)
    ratio = (1.0 - xp.sq_norm) * (1.0 - yp.sq_norm) / (d.real * d.real + d.imag * d.imag)
    return math.sqrt(min(max(1.0 - ratio, 0.0), 1.0))


def pseudohyperbolic_via_automorphism(x: VectorLike, y: VectorLike) -> float:
    """Pseudohyperbolic distance as ``||phi_y(x)||``; oracle for the closed form."""
    from .geometry import ball_automorphism

    return ball_automorphism(_as_ball_point(y), _as_ball_point(x)).norm


def automorphism_inner_product(center: VectorLike, x: VectorLike, z: VectorLike) -> complex:
    """Inner product of two automorphism images, ``inner(phi_c(x), phi_c(z))``.

    Computed without evaluating the automorphism:

        1 - (1 - inner(x, z)) (1 - ||c||^2)
            / ((1 - inner(x, c)) (1 - inner(c, z)))

    With ``z = x`` this is real and equals ``pseudohyperbolic(x, c)^2``.
    """
    c = _as_ball_point(center)
    num = (1.0 - inner(x, z)) * (1.0 - c.sq_norm)
    den = (1.0 - inner(x, c)) * (1.0 - inner(c, z))
    return 1.0 - num / den


def _coords_matrix(points) -> tuple[np.ndarray, np.ndarray]:
    """Stack points into ``(coords (n, d), sq_norms (n,))``.

    Accepts anything exposing ``coords_matrix``/``sq_norms`` (a
    ``PointSequence``), a sequence of :class:`BallPoint`/vectors, or a 2-d
    complex array whose rows must lie strictly inside the ball.
    """
    mat = getattr(points, "coords_matrix", None)
    if mat is not None:
        return np.asarray(mat), np.asarray(points.sq_norms, dtype=float)
    if isinstance(points, np.ndarray) and points.ndim == 2:
        coords = np.ascontiguousarray(points, dtype=np.complex128)
        sqn = np.einsum("ij,ij->i", coords, coords.conj()).real
    else:
        pts = [_as_ball_point(p) for p in points]
        if not pts:
            raise ValueError("empty point sequence")
        dims = {p.dim for p in pts}
        if len(dims) != 1:
            raise ValueError(f"points of mixed dimension: {sorted(dims)}")
        coords = np.stack([p.coords for p in pts])
        sqn = np.array([p.sq_norm for p in pts])
    if not np.isfinite(coords).all():
        raise ValueError("coordinates must be finite")
    if np.any(sqn >= 1.0):
        raise ValueError("all points must lie strictly inside the unit ball")
    return coords, sqn


def _row_sq_norms(X: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", X, X.conj()).real


def pseudohyperbolic_pairs(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise closed-form distances between ``X[t]`` and ``Y[t]``, shape ``(m,)``."""
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    if X.shape != Y.shape or X.ndim != 2:
        raise ValueError(f"expected matching (m, d) arrays, got {X.shape} and {Y.shape}")
    d = 1.0 - np.einsum("ij,ij->i", X, Y.conj())
    ratio = (1.0 - _row_sq_norms(X)) * (1.0 - _row_sq_norms(Y)) / (d.real**2 + d.imag**2)
    return np.sqrt(np.clip(1.0 - ratio, 0.0, 1.0))


def pseudohyperbolic_pairs_via_automorphism(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise automorphism-route distances ``||phi_{Y[t]}(X[t])||``, shape ``(m,)``."""
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    if X.shape != Y.shape or X.ndim != 2:
        raise ValueError(f"expected matching (m, d) arrays, got {X.shape} and {Y.shape}")
    sqy = _row_sq_norms(Y)
    m = (Y - X) / (1.0 - np.einsum("ij,ij->i", X, Y.conj()))[:, None]
    coef = np.einsum("ij,ij->i", m, Y.conj())
    nonzero = sqy > 0.0
    coef = np.where(nonzero, coef / np.where(nonzero, sqy, 1.0), 0.0)
    p = coef[:, None] * Y
    out = np.sqrt(1.0 - sqy)[:, None] * (m - p) + p
    return np.sqrt(_row_sq_norms(out))


def pairwise_pseudohyperbolic(points) -> np.ndarray:
    """Symmetric ``(n, n)`` matrix of pairwise distances, zero diagonal."""
    coords, sqn = _coords_matrix(points)
    g = coords @ coords.conj().T
    d = 1.0 - g
    mu = 1.0 - sqn
    ratio = np.outer(mu, mu) / (d.real**2 + d.imag**2)
    rho = np.sqrt(np.clip(1.0 - ratio, 0.0, 1.0))
    np.fill_diagonal(rho, 0.0)
    return rho


@dataclass(frozen=True)
class CarlesonReport:
    """Separation summary for a node sequence.

    ``per_index_products[j] = prod_{k != j} rho(x_k, x_j)`` and ``delta`` is
    their minimum (1.0 for a single point, by the empty product).
    ``satisfied`` records ``delta > threshold``.
    """

    delta: float
    per_index_products: np.ndarray
    threshold: float
    satisfied: bool


def carleson_delta(points, threshold: float = DEFAULT_TOLERANCES.delta_min) -> CarlesonReport:
    """Compute the Carleson separation constant of a finite sequence.

    Parameters
    ----------
    points : PointSequence, sequence of points, or (n, d) complex array
        Nodes strictly inside the ball.
    threshold : float
        Strict lower bar for ``satisfied``; coincident points give
        ``delta = 0`` and are never satisfied.

    Notes
    -----
    For more than 256 points the products are accumulated as sums of logs
    to avoid harmless underflow of long products; a zero factor still
    yields an exact zero product.
    """
    rho = pairwise_pseudohyperbolic(points)
    n = rho.shape[0]
    np.fill_diagonal(rho, 1.0)
    if n <= 256:
        per = rho.prod(axis=0)
    else:
        with np.errstate(divide="ignore"):
            per = np.exp(np.log(rho).sum(axis=0))
        per[np.any(rho == 0.0, axis=0)] = 0.0
    delta = float(per.min())
    return CarlesonReport(
        delta=delta,
        per_index_products=per,
        threshold=float(threshold),
        satisfied=delta > threshold,
    )


@dataclass(frozen=True)
class HaymanNewmanReport:
    """Result of the geometric norm-growth check.

    ``satisfied`` is True when ``1 - ||x_{k+1}|| < c (1 - ||x_k||)`` holds
    strictly for every consecutive pair; ``max_ratio`` is the largest
    observed ``(1 - ||x_{k+1}||) / (1 - ||x_k||)`` (0.0 when ``n < 2``).
    """

    c: float
    max_ratio: float
    satisfied: bool


def hayman_newman_check(points, c: float) -> HaymanNewmanReport:
    """Check exponential approach to the boundary with ratio ``c in (0, 1)``."""
    if not 0.0 < c < 1.0:
        raise ValueError(f"ratio c must lie in (0, 1), got {c}")
    _, sqn = _coords_matrix(points)
    gaps = 1.0 - np.sqrt(sqn)
    if gaps.shape[0] < 2:
        return HaymanNewmanReport(c=float(c), max_ratio=0.0, satisfied=True)
    ratios = gaps[1:] / gaps[:-1]
    return HaymanNewmanReport(
        c=float(c),
        max_ratio=float(ratios.max()),
        satisfied=bool(np.all(gaps[1:] < c * gaps[:-1])),
    )
