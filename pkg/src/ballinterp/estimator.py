"""scikit-learn style front end for the interpolation construction."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .beurling import basis_matrix, build_system
from .interpolation import make_interpolant
from .metric import carleson_delta
from .validation import check_ball_array, check_targets

__all__ = ["BeurlingInterpolator"]


class BeurlingInterpolator(BaseEstimator):
    """Exact complex interpolation at separated nodes in the unit ball.

    ``fit`` takes node coordinates ``X`` of shape ``(n, d)`` (complex,
    strictly inside the unit ball of ``C^d``) and target values ``y`` of
    shape ``(n,)``; ``predict`` evaluates the interpolant, which reproduces
    ``y`` at the nodes and is uniformly bounded by ``bound_ * max|y|`` on
    the whole ball.

    Parameters
    ----------
    delta_min : float, default 1e-6
        Minimum Carleson separation constant accepted by ``fit``.  Node
        sets at or below it are refused: the construction would still go
        through for any positive value, but its bound degrades like
        ``log(1/delta) / delta``.

    Attributes
    ----------
    system_ : BeurlingSystem
        The precomputed basis (nodes sorted by norm internally).
    delta_ : float
        Carleson constant of the fitted nodes.
    bound_ : float
        Theoretical sup bound on ``sum_j |F_j|``.
    n_features_in_ : int
        Ball dimension ``d``.

    Examples
    --------
    >>> import numpy as np
    >>> from ballinterp import BeurlingInterpolator
    >>> X = np.array([[0.0 + 0.0j], [0.5 + 0.0j]])
    >>> est = BeurlingInterpolator().fit(X, np.array([1.0 + 0j, 2.0 + 0j]))
    >>> np.round(est.predict(X), 10).tolist()
    [(1+0j), (2+0j)]
    """

    def __init__(self, delta_min: float = 1e-6):
        self.delta_min = delta_min

    def fit(self, X, y) -> "BeurlingInterpolator":
        """Build the basis for nodes ``X`` and bind targets ``y``."""
        X = check_ball_array(X, name="X")
        y = check_targets(y, X.shape[0], name="y")
        if not 0.0 <= float(self.delta_min) < 1.0:
            raise ValueError(f"delta_min must lie in [0, 1), got {self.delta_min}")
        # separation is checked before building so coincident nodes are
        # reported in estimator terms rather than from the constructor
        report = carleson_delta(X)
        if report.delta <= float(self.delta_min):
            raise ValueError(
                f"nodes are too close: Carleson constant {report.delta:.3e} "
                f"<= delta_min = {float(self.delta_min):.3e}"
            )
        system = build_system(X)
        self.system_ = system
        self.interpolant_ = make_interpolant(system, y)
        self.delta_ = system.delta
        self.bound_ = system.bound
        self.n_features_in_ = X.shape[1]
        return self

    def _require_fitted(self) -> None:
        if not hasattr(self, "system_"):
            raise RuntimeError("this BeurlingInterpolator instance is not fitted yet")

    def predict(self, X) -> np.ndarray:
        """Evaluate the interpolant at points ``X``; returns complex ``(m,)``."""
        self._require_fitted()
        X = check_ball_array(X, dim=self.n_features_in_, name="X")
        return basis_matrix(self.system_, X) @ self.interpolant_.alpha_sorted

    def transform(self, X) -> np.ndarray:
        """Basis values ``F_j`` at ``X``, columns in the fitted node order."""
        self._require_fitted()
        X = check_ball_array(X, dim=self.n_features_in_, name="X")
        f_sorted = basis_matrix(self.system_, X)
        out = np.empty_like(f_sorted)
        out[:, list(self.system_.perm)] = f_sorted
        return out

    def fit_transform(self, X, y) -> np.ndarray:
        """Fit on nodes/targets, then return the basis evaluated at the nodes."""
        return self.fit(X, y).transform(X)
