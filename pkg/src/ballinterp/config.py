"""Tolerance configuration shared across the package.

All numerical gates in the library take explicit tolerance arguments that
default to fields of :data:`DEFAULT_TOLERANCES`.  The command line front end
resolves its tolerance record once at startup via :func:`load_tolerances`,
which honours the ``BEURLING_TOL`` environment variable.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

__all__ = ["Tolerances", "DEFAULT_TOLERANCES", "load_tolerances"]

ENV_VAR = "BEURLING_TOL"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used by checks and guardrails.

    Attributes
    ----------
    identity : float
        Absolute gap allowed between two evaluation paths of an exact
        algebraic identity (metric cross-checks, inner-product identity).
    node_residual : float
        Absolute residual allowed when an interpolant is evaluated back at
        its own nodes.  This is the tolerance ``cmd_verify`` consumes.
    margin : float
        Audit margins below ``-margin`` count as failures.
    bound_slack : float
        Multiplicative slack on the theoretical sup bound when comparing
        against an empirical maximum.
    delta_min : float
        Separation threshold: a Carleson constant at or below this value is
        reported as not satisfied.
    conditioning : float
        Relative slack for construction-time guardrails (diagonal Blaschke
        magnitudes, serialized-system consistency).
    """

    identity: float = 1e-12
    node_residual: float = 1e-9
    margin: float = 1e-12
    bound_slack: float = 1e-6
    delta_min: float = 1e-6
    conditioning: float = 1e-6


DEFAULT_TOLERANCES = Tolerances()

_FIELDS = {f.name for f in dataclasses.fields(Tolerances)}


def load_tolerances(env: str | None = None) -> Tolerances:
    """Build the tolerance record, applying any ``BEURLING_TOL`` override.

    The override is either a bare float, interpreted as ``node_residual``,
    or a JSON object with a subset of the field names, e.g.
    ``{"node_residual": 1e-8, "delta_min": 1e-4}``.

    Parameters
    ----------
    env : str, optional
        Override string.  Defaults to ``os.environ["BEURLING_TOL"]`` when
        set; an unset variable yields :data:`DEFAULT_TOLERANCES`.

    Raises
    ------
    ValueError
        If the override is malformed, names an unknown field, or contains a
        non-positive or non-finite tolerance.
    """
    if env is None:
        env = os.environ.get(ENV_VAR)
    if env is None or env.strip() == "":
        return DEFAULT_TOLERANCES
    try:
        parsed = json.loads(env)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse {ENV_VAR}={env!r}: {exc}") from None
    if isinstance(parsed, (int, float)) and not isinstance(parsed, bool):
        parsed = {"node_residual": float(parsed)}
    if not isinstance(parsed, dict):
        raise ValueError(f"{ENV_VAR} must be a float or a JSON object, got {env!r}")
    unknown = set(parsed) - _FIELDS
    if unknown:
        raise ValueError(f"unknown tolerance fields in {ENV_VAR}: {sorted(unknown)}")
    clean = {}
    for name, value in parsed.items():
        value = float(value)
        if not value > 0.0 or value != value or value == float("inf"):
            raise ValueError(f"tolerance {name} must be finite and positive, got {value}")
        clean[name] = value
    return dataclasses.replace(DEFAULT_TOLERANCES, **clean)
