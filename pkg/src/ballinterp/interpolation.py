"""Interpolants on top of a Beurling system, and empirical sup estimates.

An interpolant for targets ``alpha`` (given in the caller's node order) is
the finite sum ``f(x) = sum_j alpha_sorted[j] * F_j(x)`` over the system's
sorted basis, so ``f(x_k) = alpha[k]`` at every node and
``|f| <= system.bound * max |alpha|`` on the whole ball.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beurling import BeurlingSystem, basis_matrix
from .config import DEFAULT_TOLERANCES
from .geometry import BallPoint, VectorLike, as_vector

__all__ = [
    "Interpolant",
    "NodeVerification",
    "NormEstimate",
    "make_interpolant",
    "evaluate",
    "verify_nodes",
    "sample_ball",
    "sample_ball_array",
    "estimate_constant",
]


@dataclass(frozen=True)
class Interpolant:
    """Targets bound to a system; ``alpha`` is in the caller's node order."""

    system: BeurlingSystem
    alpha: np.ndarray
    alpha_sorted: np.ndarray


def make_interpolant(system: BeurlingSystem, alpha) -> Interpolant:
    """Bind target values (caller's node order) to a built system."""
    a = np.asarray(alpha, dtype=np.complex128).ravel()
    if a.shape[0] != system.n_points:
        raise ValueError(f"expected {system.n_points} target values, got {a.shape[0]}")
    if not np.isfinite(a).all():
        raise ValueError("target values must be finite")
    a = a.copy()
    a.setflags(write=False)
    a_sorted = a[list(system.perm)]
    a_sorted.setflags(write=False)
    return Interpolant(system=system, alpha=a, alpha_sorted=a_sorted)


def evaluate(interp: Interpolant, x: VectorLike) -> complex:
    """Evaluate the interpolant at one point of the open ball."""
    row = basis_matrix(interp.system, as_vector(x)[None, :])[0]
    return complex(np.dot(interp.alpha_sorted, row))


@dataclass(frozen=True)
class NodeVerification:
    """Residuals ``|f(x_k) - alpha[k]|`` in the caller's node order."""

    max_residual: float
    residuals: np.ndarray
    tolerance: float
    passed: bool


def verify_nodes(
    interp: Interpolant, tolerance: float = DEFAULT_TOLERANCES.node_residual
) -> NodeVerification:
    """Re-evaluate the interpolant at its own nodes and report residuals."""
    system = interp.system
    values = basis_matrix(system, system.points.coords_matrix) @ interp.alpha_sorted
    res_sorted = np.abs(values - interp.alpha_sorted)
    residuals = np.empty_like(res_sorted)
    residuals[list(system.perm)] = res_sorted
    residuals.setflags(write=False)
    worst = float(res_sorted.max())
    return NodeVerification(
        max_residual=worst,
        residuals=residuals,
        tolerance=float(tolerance),
        passed=bool(worst <= tolerance),
    )


def sample_ball_array(
    dim: int, n_samples: int, seed: int = 0, boundary_fraction: float = 0.5
) -> np.ndarray:
    """Seeded sample from the open unit ball of ``C^dim``, shape ``(n_samples, dim)``.

    Directions are normalized complex Gaussian draws.  The first portion of
    the radii is uniform-in-volume (``u ** (1 / (2 dim))``, the unit ball of
    real dimension ``2 dim``); the final ``round(boundary_fraction *
    n_samples)`` radii are drawn uniformly from ``[0.99, 0.999999]`` to
    exercise the near-boundary regime where sup bounds are stressed.
    """
    if not (isinstance(dim, int) and dim >= 1):
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    if not (isinstance(n_samples, int) and n_samples >= 1):
        raise ValueError(f"n_samples must be a positive integer, got {n_samples!r}")
    if not 0.0 <= boundary_fraction <= 1.0:
        raise ValueError(f"boundary_fraction must lie in [0, 1], got {boundary_fraction}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n_samples, dim)) + 1j * rng.standard_normal((n_samples, dim))
    norms = np.sqrt(np.einsum("ij,ij->i", z, z.conj()).real)
    if not np.all(norms > 0.0):
        raise RuntimeError("degenerate direction draw")
    radii = rng.random(n_samples) ** (1.0 / (2.0 * dim))
    n_boundary = int(round(boundary_fraction * n_samples))
    if n_boundary:
        radii[n_samples - n_boundary :] = rng.uniform(0.99, 0.999999, n_boundary)
    return z * (radii / norms)[:, None]


def sample_ball(
    dim: int, n_samples: int, seed: int = 0, boundary_fraction: float = 0.5
) -> list[BallPoint]:
    """Like :func:`sample_ball_array`, but wrapping rows as :class:`BallPoint`."""
    return [BallPoint(row) for row in sample_ball_array(dim, n_samples, seed, boundary_fraction)]


@dataclass(frozen=True)
class NormEstimate:
    """Empirical maximum of ``sum_j |F_j|`` against the theoretical bound."""

    empirical_sup: float
    theoretical_bound: float
    samples_used: int
    argmax_point: BallPoint


def estimate_constant(
    system: BeurlingSystem,
    n_samples: int = 10000,
    seed: int = 0,
    boundary_fraction: float = 0.5,
) -> NormEstimate:
    """Sample the basis column sums and report their observed maximum.

    Deterministic in all arguments.  The observed maximum can only fall
    below the true sup, so ``empirical_sup <= theoretical_bound`` (up to a
    multiplicative rounding slack) is a necessary check of the bound.
    """
    X = sample_ball_array(system.dim, n_samples, seed, boundary_fraction)
    sums = np.abs(basis_matrix(system, X)).sum(axis=1)
    idx = int(np.argmax(sums))
    return NormEstimate(
        empirical_sup=float(sums[idx]),
        theoretical_bound=system.bound,
        samples_used=int(n_samples),
        argmax_point=BallPoint(X[idx]),
    )
