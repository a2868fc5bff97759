"""JSON helpers: complex values travel as [re, im] pairs, reports sort keys."""

from __future__ import annotations

import json
from typing import Any

import numpy as np


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(obj: Any, what: str = "value") -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in obj)
    ):
        raise ValueError(f"{what} must be a [re, im] pair of numbers, got {obj!r}")
    z = complex(float(obj[0]), float(obj[1]))
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {obj!r}")
    return z


def vector_to_pairs(v: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v).ravel()]


def pairs_to_vector(obj: Any, what: str = "vector") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{what} must be a nonempty list of [re, im] pairs")
    return np.array([pair_to_complex(p, what) for p in obj], dtype=np.complex128)


def dumps_report(report: dict) -> str:
    """Deterministic rendering used for every machine-readable output."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: str, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(dumps_report(report))


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fp:
        return json.load(fp)
