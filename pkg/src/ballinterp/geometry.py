"""Geometry of the open unit ball of a finite dimensional complex Hilbert space.

Points live in ``C^d`` with the inner product linear in the FIRST argument
and conjugate linear in the second,

    inner(x, y) = sum_i x[i] * conj(y[i]),

so ``inner(x, y) = conj(inner(y, x))`` and ``inner(x, x)`` is real.  All
higher layers (metric, interpolation basis) are built from three maps
parameterized by a point ``a`` of the ball:

* ``project_onto(a, x)``      orthogonal projection onto ``span{a}``,
* ``mobius_shift(a, x)``      the shift ``(a - x) / (1 - inner(x, a))``,
* ``ball_automorphism(a, x)`` the involutive automorphism of the ball that
  swaps ``a`` with the origin.

The automorphism composes the shift with a scaled complement projection:
with ``s = sqrt(1 - ||a||^2)`` and ``m = mobius_shift(a, x)``,

    phi_a(x) = s * (m - project_onto(a, m)) + project_onto(a, m).

For ``a = 0`` the projection is zero and ``s = 1``, so ``phi_0(x) = -x``.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

import numpy as np

__all__ = [
    "BallPoint",
    "ConditioningError",
    "as_vector",
    "inner",
    "norm",
    "project_onto",
    "project_complement",
    "mobius_shift",
    "ball_automorphism",
]


class ConditioningError(ArithmeticError):
    """A numerical guardrail failed; inputs are too ill conditioned to trust."""


VectorLike = Union["BallPoint", Iterable[complex], complex, np.ndarray]


def as_vector(x: VectorLike) -> np.ndarray:
    """Coerce ``x`` to a 1-d ``complex128`` array.

    Accepts a :class:`BallPoint`, any sequence of complex numbers, or a bare
    scalar (treated as a point of ``C^1``).
    """
    if isinstance(x, BallPoint):
        return x.coords
    v = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty vector, got shape {v.shape}")
    return v


def inner(x: VectorLike, y: VectorLike) -> complex:
    """Hermitian inner product, linear in ``x`` and conjugate linear in ``y``.

    Parameters
    ----------
    x, y : vector-like
        Points of the same ``C^d``.

    Returns
    -------
    complex
        ``sum_i x[i] * conj(y[i])``.

    Raises
    ------
    ValueError
        If the dimensions differ.
    """
    u = as_vector(x)
    w = as_vector(y)
    if u.shape != w.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {w.shape[0]}")
    return complex(np.dot(u, w.conj()))


def norm(x: VectorLike) -> float:
    """Norm induced by :func:`inner`; ``inner(x, x)`` has exact zero imaginary part."""
    if isinstance(x, BallPoint):
        return x.norm
    v = as_vector(x)
    return math.sqrt(np.dot(v, v.conj()).real)


class BallPoint:
    """A point strictly inside the open unit ball, with cached norm data.

    The squared norm is stored once at construction and reused verbatim by
    every formula involving ``1 - ||x||^2``; this keeps quantities that must
    cancel exactly at interpolation nodes on a single floating point path.

    Parameters
    ----------
    coords : vector-like
        Coordinates in ``C^d``, ``d >= 1``.  Copied to an immutable array.

    Raises
    ------
    ValueError
        If coordinates are empty, non finite, or have norm ``>= 1``.
    """

    __slots__ = ("coords", "sq_norm", "norm")

    def __init__(self, coords: VectorLike):
        if isinstance(coords, BallPoint):
            v = coords.coords.copy()
        else:
            v = np.atleast_1d(np.array(coords, dtype=np.complex128))
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"expected a nonempty vector, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("coordinates must be finite")
        sq = float(np.dot(v, v.conj()).real)
        if sq >= 1.0:
            raise ValueError(f"point lies outside the open unit ball: ||x||^2 = {sq}")
        v.setflags(write=False)
        self.coords = v
        self.sq_norm = sq
        self.norm = math.sqrt(sq)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def __repr__(self) -> str:
        return f"BallPoint({self.coords.tolist()!r})"


def project_onto(a: VectorLike, x: VectorLike) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the complex line spanned by ``a``.

    Returns the zero vector when ``a = 0`` (projection onto the trivial
    subspace).  Together with :func:`project_complement` this decomposes
    ``x`` into parallel and orthogonal parts: their sum reassembles ``x``
    to machine precision and the parts are mutually orthogonal.
    """
    av = as_vector(a)
    xv = as_vector(x)
    if av.shape != xv.shape:
        raise ValueError(f"dimension mismatch: {av.shape[0]} vs {xv.shape[0]}")
    # normalize by the largest coordinate first: squaring a center with
    # entries below ~1e-154 would underflow and poison the quotient; the
    # parts are divided separately because complex division by a subnormal
    # scalar overflows internally
    scale = float(np.max(np.abs(av)))
    if scale == 0.0:
        return np.zeros_like(xv)
    u = np.empty_like(av)
    u.real = av.real / scale
    u.imag = av.imag / scale
    return (np.dot(xv, u.conj()) / np.dot(u, u.conj()).real) * u


def project_complement(a: VectorLike, x: VectorLike) -> np.ndarray:
    """Component of ``x`` orthogonal to ``a``: ``x - project_onto(a, x)``."""
    xv = as_vector(x)
    return xv - project_onto(a, xv)


def mobius_shift(a: VectorLike, x: VectorLike) -> np.ndarray:
    """The vector ``(a - x) / (1 - inner(x, a))``.

    For points of the open ball the denominator satisfies
    ``|1 - inner(x, a)| >= 1 - ||x|| * ||a|| > 0``, so the map is well
    defined; no clamping is applied.
    """
    av = as_vector(a)
    xv = as_vector(x)
    if av.shape != xv.shape:
        raise ValueError(f"dimension mismatch: {av.shape[0]} vs {xv.shape[0]}")
    return (av - xv) / (1.0 - np.dot(xv, av.conj()))


def ball_automorphism(a: BallPoint, x: VectorLike) -> BallPoint:
    """Evaluate the involutive ball automorphism centered at ``a``.

    Parameters
    ----------
    a : BallPoint
        Center; the map sends ``a`` to ``0`` and ``0`` to ``a``.
    x : vector-like
        Point of the open ball to map.

    Returns
    -------
    BallPoint
        ``phi_a(x)``; applying the map twice returns ``x``.

    Raises
    ------
    ConditioningError
        If rounding pushes the image onto or outside the unit sphere, which
        can only happen for inputs within machine precision of the boundary.
    """
    if not isinstance(a, BallPoint):
        a = BallPoint(a)
    m = mobius_shift(a, x)
    p = project_onto(a, m)
    s = math.sqrt(1.0 - a.sq_norm)
    out = s * (m - p) + p
    try:
        return BallPoint(out)
    except ValueError as exc:
        raise ConditioningError(f"automorphism image left the open ball: {exc}") from None
