"""Beurling-type interpolation basis for separated node sequences.

Given nodes ``x_1, ..., x_n`` (sorted by norm) whose Carleson constant

    delta = min_j prod_{k != j} rho(x_k, x_j)

is positive, the system assembles, for each node ``j``, a bounded analytic
function that is 1 at ``x_j`` and 0 at every other node:

    F_j(x) = (B_j(x) / B_j(x_j)) * q_j(x)^2
             * exp(-C_delta * (A_j(x) - A_j(x_j)))

* ``B_j`` (``blaschke_product``) is the product over ``k != j`` of factors
  ``g_kj`` (``blaschke_factor``) that vanish at ``x_k``; each factor is an
  inner product of two automorphism images and has modulus at most 1, so
  ``|B_j| <= 1`` while ``|B_j(x_j)| = prod_{k != j} rho(x_k, x_j)^2 >=
  delta^2``.
* ``q_j`` (``kernel_factor``) is the squared normalized kernel ratio
  ``((1 - ||x_j||^2) / (1 - inner(x, x_j)))^2``, equal to 1 at ``x_j``.
* ``A_j`` (``exponent_series``) is a positive-real-part series over
  ``k >= j`` (the ``k = j`` term included) whose damped exponential keeps
  the column sums ``sum_j |F_j(x)|`` uniformly bounded by
  ``interpolation_bound(delta) = 128 / (e * delta * C_delta)`` with
  ``C_delta = 1 / (1 + 2 log(1/delta))``.

Everything the evaluation needs repeatedly (the node Gram matrix, factor
coefficients, exponent weights, and the diagonal values ``B_j(x_j)``,
``A_j(x_j)``) is precomputed once in :class:`BeurlingSystem`.  The diagonal
values are produced by the same code path used for evaluation, so the
normalizations cancel exactly and ``F_j(x_j) = 1`` holds to machine
precision, not merely to analytic accuracy.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ._codec import pair_to_complex, pairs_to_vector, vector_to_pairs
from .config import DEFAULT_TOLERANCES
from .geometry import BallPoint, ConditioningError, VectorLike, as_vector
from .metric import carleson_delta
from .sequences import PointSequence

__all__ = [
    "BeurlingSystem",
    "build_system",
    "sort_by_norm",
    "damping_coefficient",
    "interpolation_bound",
    "blaschke_factor",
    "blaschke_product",
    "kernel_factor",
    "kernel_bound",
    "exponent_series",
    "beurling_function",
    "basis_matrix",
    "exponent_matrix",
    "kernel_matrix",
    "kernel_bound_matrix",
]


def sort_by_norm(seq: PointSequence) -> tuple[PointSequence, tuple[int, ...]]:
    """Stable sort of a sequence by nondecreasing norm.

    Returns the sorted sequence and ``perm`` with ``perm[i]`` the input
    index of the ``i``-th sorted point; ties keep their input order.
    """
    if not isinstance(seq, PointSequence):
        seq = PointSequence(seq)
    order = np.argsort(seq.norms, kind="stable")
    pts = [seq.points[int(i)] for i in order]
    return PointSequence(pts, label=seq.label), tuple(int(i) for i in order)


def damping_coefficient(delta: float) -> float:
    """``C_delta = 1 / (1 + 2 log(1/delta))`` for ``delta in (0, 1]``."""
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    return 1.0 / (1.0 - 2.0 * math.log(delta))


def interpolation_bound(delta: float) -> float:
    """Sup bound ``128 / (e * delta * C_delta)`` for the basis column sums.

    Decreasing in ``delta``, with minimum ``128 / e`` at ``delta = 1``.
    """
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    return 128.0 / (math.e * delta * damping_coefficient(delta))


class BeurlingSystem:
    """Precomputed interpolation basis for a sorted node sequence.

    Construct via :func:`build_system` (which sorts and validates) or
    :meth:`from_dict`.  Attributes mirror the serialized contract:

    ``points``
        The node sequence in sorted order.
    ``perm``
        ``perm[i]`` = caller's index of sorted node ``i``.
    ``delta``, ``damping``, ``bound``
        Carleson constant, ``C_delta``, and the theoretical sup bound.
    ``blaschke_diag``, ``exponent_diag``
        ``B_j(x_j)`` and ``A_j(x_j)``, reused verbatim by every evaluation.
    """

    def __init__(self, points: PointSequence, perm: Sequence[int]):
        if not isinstance(points, PointSequence):
            points = PointSequence(points)
        norms = points.norms
        if np.any(norms[1:] < norms[:-1]):
            raise ValueError("points must be sorted by nondecreasing norm")
        n = len(points)
        if len(perm) != n or sorted(perm) != list(range(n)):
            raise ValueError(f"perm must be a permutation of range({n})")
        self.points = points
        self.perm = tuple(int(i) for i in perm)

        report = carleson_delta(points)
        if report.delta == 0.0:
            bad = int(np.argmin(report.per_index_products))
            raise ValueError(
                "Carleson constant zero: node "
                f"{self.perm[bad]} coincides with another node"
            )
        self.delta = report.delta
        self.damping = damping_coefficient(self.delta)
        self.bound = interpolation_bound(self.delta)

        self.coords = points.coords_matrix
        self.sq_norms = points.sq_norms
        self.gram = self.coords @ self.coords.conj().T
        mu = 1.0 - self.sq_norms
        # factor coefficient: g_kj(x) = 1 - gcoef[k, j] * (1 - <x, x_j>) / (1 - <x, x_k>)
        self.gcoef = mu[:, None] / (1.0 - self.gram)
        g2 = self.gram.real**2 + self.gram.imag**2
        self.weights = np.outer(mu, mu) / (1.0 - g2)
        # lower-triangular part (k >= j) drives the exponent series
        self.exponent_weights = np.tril(self.weights)

        diag_b = np.empty(n, dtype=np.complex128)
        diag_a = np.empty(n, dtype=np.complex128)
        for j, p in enumerate(points):
            diag_b[j] = blaschke_product(self, j, p)
            diag_a[j] = exponent_series(self, j, p)
        self.blaschke_diag = diag_b
        self.exponent_diag = diag_a
        self._check_diagonals()

    def _check_diagonals(self) -> None:
        slack = DEFAULT_TOLERANCES.conditioning
        floor = self.delta * self.delta * (1.0 - slack)
        mags = np.abs(self.blaschke_diag)
        if np.any(mags < floor):
            j = int(np.argmin(mags))
            raise ConditioningError(
                f"diagonal Blaschke magnitude {mags[j]:.3e} at node {j} fell "
                f"below delta^2 = {self.delta**2:.3e}"
            )
        cap = 1.0 - 2.0 * math.log(self.delta) + 1e-9
        re_a = self.exponent_diag.real
        if np.any(re_a > cap) or np.any(re_a < 1.0 - 1e-9):
            raise ConditioningError(
                "diagonal exponent series left its guaranteed range "
                f"[1, 1 + 2 log(1/delta)]: {re_a}"
            )

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.dim

    def __repr__(self) -> str:
        return (
            f"BeurlingSystem(n={self.n_points}, dim={self.dim}, "
            f"delta={self.delta:.6g}, bound={self.bound:.6g})"
        )

    def to_dict(self) -> dict:
        """Serialized form (sorted points; complex values as [re, im])."""
        return {
            "dim": self.dim,
            "delta": self.delta,
            "C_delta": self.damping,
            "bound": self.bound,
            "perm": list(self.perm),
            "points": [vector_to_pairs(p.coords) for p in self.points],
            "B_diag": vector_to_pairs(self.blaschke_diag),
            "A_diag": vector_to_pairs(self.exponent_diag),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BeurlingSystem":
        """Rebuild from :meth:`to_dict` output, re-deriving all caches.

        Stored summary values are cross-checked against the recomputation
        at relative tolerance 1e-9; a mismatch means the file was edited or
        produced by an incompatible build, and raises ValueError.
        """
        if not isinstance(data, dict):
            raise ValueError("system file must contain a JSON object")
        required = {"dim", "delta", "C_delta", "bound", "perm", "points", "B_diag", "A_diag"}
        missing = required - set(data)
        if missing:
            raise ValueError(f"system file missing keys {sorted(missing)}")
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        raw_pts = data["points"]
        if not isinstance(raw_pts, list) or not raw_pts:
            raise ValueError("points must be a nonempty list")
        pts = []
        for i, raw in enumerate(raw_pts):
            if not isinstance(raw, list) or len(raw) != dim:
                raise ValueError(f"point {i} must be a list of {dim} [re, im] pairs")
            pts.append(BallPoint([pair_to_complex(p, f"point {i}") for p in raw]))
        perm = data["perm"]
        if not isinstance(perm, list) or not all(isinstance(i, int) for i in perm):
            raise ValueError("perm must be a list of integers")
        system = cls(PointSequence(pts), perm)

        def against(stored, fresh, what):
            stored = np.asarray(stored)
            fresh = np.asarray(fresh)
            scale = np.maximum(np.abs(fresh), 1.0)
            if np.any(np.abs(stored - fresh) > 1e-9 * scale):
                raise ValueError(f"system file {what} inconsistent with its points")

        against(float(data["delta"]), system.delta, "delta")
        against(float(data["C_delta"]), system.damping, "C_delta")
        against(float(data["bound"]), system.bound, "bound")
        against(pairs_to_vector(data["B_diag"], "B_diag"), system.blaschke_diag, "B_diag")
        against(pairs_to_vector(data["A_diag"], "A_diag"), system.exponent_diag, "A_diag")
        return system


def build_system(seq) -> BeurlingSystem:
    """Sort a node sequence by norm and precompute its interpolation basis.

    Parameters
    ----------
    seq : PointSequence or sequence of points
        Nodes strictly inside the ball, any order.

    Raises
    ------
    ValueError
        If two nodes coincide (Carleson constant zero).
    ConditioningError
        If a construction-time guardrail fails.
    """
    sorted_seq, perm = sort_by_norm(seq)
    return BeurlingSystem(sorted_seq, perm)


def _inner_with_nodes(system: BeurlingSystem, x: VectorLike) -> np.ndarray:
    """``inner(x, x_k)`` for every node ``k``, shape ``(n,)``."""
    xv = as_vector(x)
    if xv.shape[0] != system.dim:
        raise ValueError(f"dimension mismatch: point has {xv.shape[0]}, system has {system.dim}")
    return np.dot(system.coords.conj(), xv)


def blaschke_factor(system: BeurlingSystem, k: int, j: int, x: VectorLike) -> complex:
    """Single factor ``g_kj(x)``: zero at ``x_k``, modulus at most 1 on the ball.

    Equals ``inner(phi_k(x), phi_k(x_j))`` where ``phi_k`` is the ball
    automorphism centered at node ``k``; at ``x = x_j`` the value is
    ``rho(x_k, x_j)^2``.
    """
    if k == j:
        raise ValueError("factor index k must differ from j")
    ip = _inner_with_nodes(system, x)
    dk = 1.0 - ip[k]
    dj = 1.0 - ip[j]
    return complex(1.0 - system.gcoef[k, j] * dj / dk)


def blaschke_product(system: BeurlingSystem, j: int, x: VectorLike) -> complex:
    """``B_j(x) = prod_{k != j} g_kj(x)``; the empty product (n = 1) is 1."""
    ip = _inner_with_nodes(system, x)
    d = 1.0 - ip
    g = 1.0 - system.gcoef[:, j] * d[j] / d
    g[j] = 1.0
    return complex(g.prod())


def kernel_factor(system: BeurlingSystem, j: int, x: VectorLike) -> complex:
    """``q_j(x) = ((1 - ||x_j||^2) / (1 - inner(x, x_j)))^2``, exactly 1 at ``x_j``."""
    ip = _inner_with_nodes(system, x)
    base = (1.0 - system.sq_norms[j]) / (1.0 - ip[j])
    return complex(base * base)


def kernel_bound(system: BeurlingSystem, k: int, x: VectorLike) -> float:
    """``b_k(x) = (1 - ||x_k||^2) / (1 - |inner(x_k, x)|^2)``, in ``(0, 1]``.

    Controls the kernel factor through ``|q_k(x)| <= 4 b_k(x)^2``.
    """
    ip = _inner_with_nodes(system, x)[k]
    a2 = ip.real * ip.real + ip.imag * ip.imag
    if a2 >= 1.0:
        raise ConditioningError(
            "node/evaluation inner product reached modulus 1; inputs are "
            "within rounding of the boundary"
        )
    return float((1.0 - system.sq_norms[k]) / (1.0 - a2))


def exponent_series(system: BeurlingSystem, j: int, x: VectorLike) -> complex:
    """``A_j(x) = sum_{k >= j} w_kj (1 + inner(x_k, x)) / (1 - inner(x_k, x))``.

    The weights are ``w_kj = (1 - ||x_k||^2)(1 - ||x_j||^2) /
    (1 - |inner(x_k, x_j)|^2)``; every term has positive real part, and at
    ``x = x_j`` the real part totals ``sum_{k >= j} (1 - rho(x_k, x_j)^2)
    <= 1 + 2 log(1/delta)``.
    """
    e = _inner_with_nodes(system, x)[j:].conj()
    terms = system.weights[j:, j] * (1.0 + e) / (1.0 - e)
    return complex(terms.sum())


def beurling_function(system: BeurlingSystem, j: int, x: VectorLike) -> complex:
    """Evaluate basis function ``F_j`` at one point of the open ball."""
    b = blaschke_product(system, j, x)
    q = kernel_factor(system, j, x)
    a = exponent_series(system, j, x)
    damp = np.exp(-system.damping * (a - system.exponent_diag[j]))
    return complex((b / system.blaschke_diag[j]) * q * q * damp)


def _eval_points(system: BeurlingSystem, X: np.ndarray) -> np.ndarray:
    X = np.ascontiguousarray(X, dtype=np.complex128)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != system.dim:
        raise ValueError(f"expected evaluation points of shape (m, {system.dim})")
    if not np.isfinite(X).all():
        raise ValueError("evaluation points must be finite")
    if np.any(np.einsum("ij,ij->i", X, X.conj()).real >= 1.0):
        raise ValueError("evaluation points must lie strictly inside the unit ball")
    return X


def basis_matrix(system: BeurlingSystem, X: np.ndarray) -> np.ndarray:
    """Evaluate all basis functions at many points: ``out[t, j] = F_j(X[t])``.

    Vectorized equivalent of :func:`beurling_function`; the two paths agree
    to near machine precision and the scalar path is the reference.
    """
    X = _eval_points(system, X)
    e = X @ system.coords.conj().T
    d = 1.0 - e
    n = system.n_points
    b = np.empty(d.shape, dtype=np.complex128)
    for j in range(n):
        g = 1.0 - system.gcoef[:, j] * d[:, [j]] / d
        g[:, j] = 1.0
        b[:, j] = g.prod(axis=1)
    q = ((1.0 - system.sq_norms) / d) ** 2
    ec = e.conj()
    a = ((1.0 + ec) / (1.0 - ec)) @ system.exponent_weights
    damp = np.exp(-system.damping * (a - system.exponent_diag))
    return (b / system.blaschke_diag) * q * q * damp


def exponent_matrix(system: BeurlingSystem, X: np.ndarray) -> np.ndarray:
    """``out[t, j] = A_j(X[t])`` for many points at once."""
    X = _eval_points(system, X)
    ec = (X @ system.coords.conj().T).conj()
    return ((1.0 + ec) / (1.0 - ec)) @ system.exponent_weights


def kernel_matrix(system: BeurlingSystem, X: np.ndarray) -> np.ndarray:
    """``out[t, j] = q_j(X[t])`` for many points at once."""
    X = _eval_points(system, X)
    d = 1.0 - X @ system.coords.conj().T
    return ((1.0 - system.sq_norms) / d) ** 2


def kernel_bound_matrix(system: BeurlingSystem, X: np.ndarray) -> np.ndarray:
    """``out[t, k] = b_k(X[t])``, the modulus bounds for the kernel factors."""
    X = _eval_points(system, X)
    e = X @ system.coords.conj().T
    a2 = e.real**2 + e.imag**2
    if np.any(a2 >= 1.0):
        raise ConditioningError(
            "node/evaluation inner product reached modulus 1; inputs are "
            "within rounding of the boundary"
        )
    return (1.0 - system.sq_norms) / (1.0 - a2)
