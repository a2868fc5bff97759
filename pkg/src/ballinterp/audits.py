"""Randomized audits of the inequalities behind the sup-bound proof.

Each audit draws seeded samples from the domain of one supporting
inequality (or exact identity), computes a signed margin that is
nonnegative when the statement holds (for identities, minus the absolute
gap), and reports how many trials fell below ``-tolerance``.

Margins are reported raw: a failing audit is evidence against the
implementation (or the statement) and is never clipped.  Sampling domains
are chosen so that a true statement cannot fail at the default tolerance
through rounding alone; see the individual drivers for the one place the
domain is trimmed for that reason.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._codec import complex_to_pair, vector_to_pairs
from .config import DEFAULT_TOLERANCES
from .metric import _coords_matrix, carleson_delta

__all__ = [
    "AuditReport",
    "merge_reports",
    "peak_envelope",
    "TAIL_SUM_CAP",
    "log_bound_margin",
    "poisson_kernel_gap",
    "min_envelope_margin",
    "tail_sum_margin",
    "rudin_margin",
    "factor_two_margins",
    "eighth_margin",
    "carleson_sum_margins",
    "audit_log_inequality",
    "audit_poisson_kernel",
    "audit_min_envelope",
    "audit_tail_sum",
    "audit_rudin_inequality",
    "audit_factor_two",
    "audit_eighth_comparison",
    "audit_carleson_sums",
]

_MARGIN = DEFAULT_TOLERANCES.margin

# integral over (0, inf) of peak_envelope; the cap in the tail-sum lemma
TAIL_SUM_CAP = 32.0 / math.e


@dataclass(frozen=True)
class AuditReport:
    """Outcome of one audit run.

    ``failures`` counts trials whose margin fell below ``-tolerance`` (the
    tolerance is the caller's; the report only stores outcomes).
    """

    lemma_id: str
    trials: int
    failures: int
    worst_margin: float
    worst_case_input: dict

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "worst_case_input": self.worst_case_input,
        }


def merge_reports(reports: list[AuditReport], lemma_id: str | None = None) -> AuditReport:
    """Combine runs of the same audit (e.g. across dimensions)."""
    if not reports:
        raise ValueError("nothing to merge")
    worst = min(reports, key=lambda r: r.worst_margin)
    return AuditReport(
        lemma_id=lemma_id or reports[0].lemma_id,
        trials=sum(r.trials for r in reports),
        failures=sum(r.failures for r in reports),
        worst_margin=worst.worst_margin,
        worst_case_input=worst.worst_case_input,
    )


def _aggregate(
    lemma_id: str,
    margins: np.ndarray,
    describe: Callable[[int], dict],
    tolerance: float,
) -> AuditReport:
    margins = np.asarray(margins, dtype=float)
    i = int(np.argmin(margins))
    return AuditReport(
        lemma_id=lemma_id,
        trials=int(margins.size),
        failures=int(np.count_nonzero(margins < -tolerance)),
        worst_margin=float(margins[i]),
        worst_case_input=describe(i),
    )


def _ball_rows(rng: np.random.Generator, trials: int, dim: int) -> np.ndarray:
    """Uniform-in-volume sample of the open ball, shape ``(trials, dim)``."""
    z = rng.standard_normal((trials, dim)) + 1j * rng.standard_normal((trials, dim))
    norms = np.sqrt(np.einsum("ij,ij->i", z, z.conj()).real)
    radii = rng.random(trials) ** (1.0 / (2.0 * dim))
    return z * (radii / norms)[:, None]


def _rows_inner(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", X, Y.conj())


def _abs2(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z)
    return z.real**2 + z.imag**2


# ---------------------------------------------------------------------------
# margins


def log_bound_margin(x):
    """Margin of ``1 - x <= -log(x)`` on ``(0, 1]``; zero exactly at x = 1."""
    x = np.asarray(x, dtype=float)
    return -np.log(x) - (1.0 - x)


def poisson_kernel_gap(alpha, z):
    """Absolute gap between the two sides of the disc identity

    ``Re((1 + alpha z) / (1 - alpha z)) = (1 - |alpha|^2 |z|^2) / |1 - alpha z|^2``.
    """
    alpha = np.asarray(alpha, dtype=complex)
    z = np.asarray(z, dtype=complex)
    w = alpha * z
    lhs = ((1.0 + w) / (1.0 - w)).real
    rhs = (1.0 - _abs2(alpha) * _abs2(z)) / _abs2(1.0 - w)
    return np.abs(lhs - rhs)


def peak_envelope(t):
    """``min(1, 256 / (e^2 t^2))``: a majorant of ``u^2 exp(-u t / 8)`` for u in [0, 1]."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        return np.minimum(1.0, 256.0 / (math.e**2 * t * t))


def min_envelope_margin(u, t):
    """Margin of ``u^2 exp(-u t / 8) <= peak_envelope(t)``; equality at u = 16/t."""
    u = np.asarray(u, dtype=float)
    return peak_envelope(t) - u * u * np.exp(-u * np.asarray(t, dtype=float) / 8.0)


def tail_sum_margin(c) -> float:
    """Margin of ``sum_j c_j * peak_envelope(sum_{k >= j} c_k) <= 32 / e``.

    The envelope argument is the tail sum starting at ``j`` itself.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size == 0 or np.any(c <= 0.0) or np.any(c >= 1.0):
        raise ValueError("expected a nonempty vector with entries in (0, 1)")
    tails = np.cumsum(c[::-1])[::-1]
    return float(TAIL_SUM_CAP - np.sum(c * peak_envelope(tails)))


def rudin_margin(a, b, c):
    """Margin of ``|1 - inner(a, b)| <= (sqrt|1 - inner(a, c)| + sqrt|1 - inner(b, c)|)^2``.

    Row-wise over ``(m, d)`` arrays of ball points.
    """
    lhs = np.abs(1.0 - _rows_inner(a, b))
    s = np.sqrt(np.abs(1.0 - _rows_inner(a, c))) + np.sqrt(np.abs(1.0 - _rows_inner(b, c)))
    return s * s - lhs


def factor_two_margins(x1, x2, x3):
    """Margins of both factor-two triangle forms, row-wise.

    Returns ``(m_mod, m_full)`` for

        1 - |inner(x1, x2)| <= 2 [(1 - |inner(x1, x3)|) + (1 - |inner(x2, x3)|)]
        |1 - inner(x1, x2)| <= 2 [|1 - inner(x1, x3)| + |1 - inner(x2, x3)|]
    """
    p12 = _rows_inner(x1, x2)
    p13 = _rows_inner(x1, x3)
    p23 = _rows_inner(x2, x3)
    m_mod = 2.0 * ((1.0 - np.abs(p13)) + (1.0 - np.abs(p23))) - (1.0 - np.abs(p12))
    m_full = 2.0 * (np.abs(1.0 - p13) + np.abs(1.0 - p23)) - np.abs(1.0 - p12)
    return m_mod, m_full


def eighth_margin(xk, xj, x):
    """Margin of the factor-eight kernel comparison, row-wise.

    Requires ``||xk|| >= ||xj||`` per row:

        (1 - |inner(xk, x)|^2) / (1 - |inner(xk, xj)|^2)
            >= (1/8) (1 - ||xk||^2) / (1 - |inner(xj, x)|^2)
    """
    sq_k = _rows_inner(xk, xk).real
    sq_j = _rows_inner(xj, xj).real
    if np.any(sq_k < sq_j):
        raise ValueError("rows must satisfy ||xk|| >= ||xj||")
    lhs = (1.0 - _abs2(_rows_inner(xk, x))) / (1.0 - _abs2(_rows_inner(xk, xj)))
    rhs = 0.125 * (1.0 - sq_k) / (1.0 - _abs2(_rows_inner(xj, x)))
    return lhs - rhs


def carleson_sum_margins(points) -> np.ndarray:
    """Margins ``(n, 2)`` of the two separated-sum bounds at each index.

    Column 0: ``sum_{k != j} (1 - ||x_k||^2) <= 2 log(1/delta) (1 + ||x_j||) / (1 - ||x_j||)``.
    Column 1: ``sum_k (1 - ||x_k||^2) <= (1 + 2 log(1/delta)) (1 + ||x_j||) / (1 - ||x_j||)``.

    Raises ValueError when the sequence has Carleson constant zero.
    """
    report = carleson_delta(points)
    if report.delta == 0.0:
        raise ValueError("Carleson constant zero; the separated-sum bounds do not apply")
    _, sqn = _coords_matrix(points)
    gaps = 1.0 - sqn
    norms = np.sqrt(sqn)
    total = gaps.sum()
    log_inv = -math.log(report.delta)
    growth = (1.0 + norms) / (1.0 - norms)
    within = 2.0 * log_inv * growth - (total - gaps)
    full = (1.0 + 2.0 * log_inv) * growth - total
    return np.stack([within, full], axis=1)


# ---------------------------------------------------------------------------
# drivers


def audit_log_inequality(trials: int, seed: int = 0, tolerance: float = _MARGIN) -> AuditReport:
    """Sample ``x`` uniformly in ``(0, 1]``."""
    rng = np.random.default_rng(seed)
    x = 1.0 - rng.random(trials)
    margins = log_bound_margin(x)
    return _aggregate("log-bound", margins, lambda i: {"x": float(x[i])}, tolerance)


def audit_poisson_kernel(trials: int, seed: int = 0, tolerance: float = _MARGIN) -> AuditReport:
    """Sample ``alpha`` on the closed disc (a tenth exactly on the circle).

    ``z`` is drawn uniformly from the disc of radius 0.93 rather than the
    full open disc: the identity is exact, but within ~0.07 of the circle
    the two floating point paths can differ by more than the default margin
    tolerance, which would flag rounding rather than a defect.
    """
    rng = np.random.default_rng(seed)
    r_a = np.sqrt(rng.random(trials))
    r_a[rng.random(trials) < 0.1] = 1.0
    alpha = r_a * np.exp(2j * np.pi * rng.random(trials))
    z = 0.93 * np.sqrt(rng.random(trials)) * np.exp(2j * np.pi * rng.random(trials))
    margins = -poisson_kernel_gap(alpha, z)
    return _aggregate(
        "poisson-kernel",
        margins,
        lambda i: {"alpha": complex_to_pair(alpha[i]), "z": complex_to_pair(z[i])},
        tolerance,
    )


def audit_min_envelope(trials: int, seed: int = 0, tolerance: float = _MARGIN) -> AuditReport:
    """Sample ``u`` in [0, 1] and ``t`` in (0, 1000]."""
    rng = np.random.default_rng(seed)
    u = rng.random(trials)
    t = 1000.0 * (1.0 - rng.random(trials))
    margins = min_envelope_margin(u, t)
    return _aggregate(
        "min-envelope",
        margins,
        lambda i: {"u": float(u[i]), "t": float(t[i])},
        tolerance,
    )


def audit_tail_sum(trials: int, seed: int = 0, tolerance: float = _MARGIN) -> AuditReport:
    """Random sequences in (0, 1) of length 1..100; one margin per sequence."""
    rng = np.random.default_rng(seed)
    margins = np.empty(trials)
    seqs = []
    for i in range(trials):
        length = int(rng.integers(1, 101))
        c = rng.random(length)
        c[c == 0.0] = 0.5
        seqs.append(c)
        margins[i] = tail_sum_margin(c)
    return _aggregate(
        "tail-sum",
        margins,
        lambda i: {"c": [float(v) for v in seqs[i]]},
        tolerance,
    )


def audit_rudin_inequality(
    trials: int, seed: int = 0, dim: int = 1, tolerance: float = _MARGIN
) -> AuditReport:
    """Uniform ball triples in the given dimension."""
    rng = np.random.default_rng(seed)
    a = _ball_rows(rng, trials, dim)
    b = _ball_rows(rng, trials, dim)
    c = _ball_rows(rng, trials, dim)
    margins = rudin_margin(a, b, c)

    def describe(i: int) -> dict:
        return {
            "dim": dim,
            "a": vector_to_pairs(a[i]),
            "b": vector_to_pairs(b[i]),
            "c": vector_to_pairs(c[i]),
        }

    return _aggregate("rudin", margins, describe, tolerance)


def audit_factor_two(
    trials: int, seed: int = 0, dim: int = 1, tolerance: float = _MARGIN
) -> AuditReport:
    """Uniform ball triples; per trial the margin is the lesser of the two forms."""
    rng = np.random.default_rng(seed)
    x1 = _ball_rows(rng, trials, dim)
    x2 = _ball_rows(rng, trials, dim)
    x3 = _ball_rows(rng, trials, dim)
    m_mod, m_full = factor_two_margins(x1, x2, x3)
    margins = np.minimum(m_mod, m_full)

    def describe(i: int) -> dict:
        return {
            "dim": dim,
            "form": "modulus" if m_mod[i] <= m_full[i] else "full",
            "x1": vector_to_pairs(x1[i]),
            "x2": vector_to_pairs(x2[i]),
            "x3": vector_to_pairs(x3[i]),
        }

    return _aggregate("factor-two", margins, describe, tolerance)


def audit_eighth_comparison(
    trials: int, seed: int = 0, dim: int = 1, tolerance: float = _MARGIN
) -> AuditReport:
    """Uniform ball triples, ordered so the first has the larger norm."""
    rng = np.random.default_rng(seed)
    xk = _ball_rows(rng, trials, dim)
    xj = _ball_rows(rng, trials, dim)
    x = _ball_rows(rng, trials, dim)
    swap = _rows_inner(xk, xk).real < _rows_inner(xj, xj).real
    xk[swap], xj[swap] = xj[swap], xk[swap]
    margins = eighth_margin(xk, xj, x)

    def describe(i: int) -> dict:
        return {
            "dim": dim,
            "xk": vector_to_pairs(xk[i]),
            "xj": vector_to_pairs(xj[i]),
            "x": vector_to_pairs(x[i]),
        }

    return _aggregate("eighth", margins, describe, tolerance)


def audit_carleson_sums(points, tolerance: float = _MARGIN) -> AuditReport:
    """Check both separated-sum bounds at every index of one sequence."""
    margins = carleson_sum_margins(points)
    per_index = margins.min(axis=1)

    def describe(i: int) -> dict:
        return {
            "index": int(i),
            "form": "within-sum" if margins[i, 0] <= margins[i, 1] else "full-sum",
        }

    return _aggregate("carleson-sums", per_index, describe, tolerance)
