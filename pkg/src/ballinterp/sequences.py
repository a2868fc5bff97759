"""Node sequence container, deterministic generators, and file formats.

A sequence file is JSON with the shape

    {"dim": 2, "label": "...", "points": [[[re, im], [re, im]], ...]}

and a target-value file is ``{"alpha": [[re, im], ...]}``, index-aligned
with the sequence the values belong to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ._codec import pair_to_complex, read_json, vector_to_pairs, write_json
from .geometry import BallPoint

__all__ = [
    "PointSequence",
    "GeneratorSpec",
    "generate",
    "gen_radial_geometric",
    "gen_orthogonal_directions",
    "gen_random_ball",
    "load_sequence",
    "save_sequence",
    "load_values",
    "save_values",
]


class PointSequence:
    """An ordered, immutable sequence of ball points of one dimension."""

    __slots__ = ("points", "label", "_coords", "_sq_norms")

    def __init__(self, points: Sequence[BallPoint], label: str = ""):
        pts = tuple(p if isinstance(p, BallPoint) else BallPoint(p) for p in points)
        if not pts:
            raise ValueError("a point sequence needs at least one point")
        dims = {p.dim for p in pts}
        if len(dims) != 1:
            raise ValueError(f"points of mixed dimension: {sorted(dims)}")
        self.points = pts
        self.label = str(label)
        self._coords = None
        self._sq_norms = None

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[BallPoint]:
        return iter(self.points)

    def __getitem__(self, k: int) -> BallPoint:
        return self.points[k]

    @property
    def coords_matrix(self) -> np.ndarray:
        """Stacked coordinates, shape ``(n, dim)``, read-only."""
        if self._coords is None:
            mat = np.stack([p.coords for p in self.points])
            mat.setflags(write=False)
            self._coords = mat
        return self._coords

    @property
    def sq_norms(self) -> np.ndarray:
        """Cached squared norms of the points, shape ``(n,)``."""
        if self._sq_norms is None:
            arr = np.array([p.sq_norm for p in self.points])
            arr.setflags(write=False)
            self._sq_norms = arr
        return self._sq_norms

    @property
    def norms(self) -> np.ndarray:
        return np.sqrt(self.sq_norms)

    def __repr__(self) -> str:
        return f"PointSequence(n={len(self)}, dim={self.dim}, label={self.label!r})"


_KINDS = ("radial", "orthogonal", "random")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for the built-in sequence generators.

    ``c`` and ``r0`` drive the geometric radius schedule
    ``r_k = 1 - (1 - r0) * c**k`` (k = 0, ..., n-1) of the two deterministic
    kinds; ``seed`` only matters for ``kind="random"``.
    """

    kind: str
    n: int
    dim: int
    c: float = 0.5
    r0: float = 0.0
    seed: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.dim, int) and self.dim >= 1):
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if self.kind in ("radial", "orthogonal"):
            if not 0.0 < self.c < 1.0:
                raise ValueError(f"c must lie in (0, 1), got {self.c}")
            if not 0.0 <= self.r0 < 1.0:
                raise ValueError(f"r0 must lie in [0, 1), got {self.r0}")
        if self.kind == "orthogonal" and self.n > self.dim:
            raise ValueError(
                f"orthogonal kind needs n <= dim, got n={self.n}, dim={self.dim}"
            )


def _geometric_radii(spec: GeneratorSpec) -> np.ndarray:
    gaps = (1.0 - spec.r0) * spec.c ** np.arange(spec.n)
    radii = 1.0 - gaps
    if np.any(radii >= 1.0):
        raise ValueError(
            "radius schedule underflowed to the boundary; reduce n or increase c"
        )
    return radii


def gen_radial_geometric(spec: GeneratorSpec) -> PointSequence:
    """Points ``r_k * e_1`` marching geometrically toward the boundary.

    The gap ratio is exactly ``c``, so the output satisfies the
    Hayman-Newman check for any ratio strictly above ``c``.
    """
    radii = _geometric_radii(spec)
    pts = []
    for r in radii:
        v = np.zeros(spec.dim, dtype=np.complex128)
        v[0] = r
        pts.append(BallPoint(v))
    return PointSequence(pts, label=spec.label or f"radial-c{spec.c}-n{spec.n}")


def gen_orthogonal_directions(spec: GeneratorSpec) -> PointSequence:
    """Same radius schedule, but point ``k`` along basis direction ``e_k``."""
    radii = _geometric_radii(spec)
    pts = []
    for k, r in enumerate(radii):
        v = np.zeros(spec.dim, dtype=np.complex128)
        v[k] = r
        pts.append(BallPoint(v))
    return PointSequence(pts, label=spec.label or f"orthogonal-c{spec.c}-n{spec.n}")


def gen_random_ball(spec: GeneratorSpec) -> PointSequence:
    """Seeded uniform draws from the open ball (no boundary concentration)."""
    from .interpolation import sample_ball

    pts = sample_ball(spec.dim, spec.n, seed=spec.seed, boundary_fraction=0.0)
    return PointSequence(pts, label=spec.label or f"random-seed{spec.seed}-n{spec.n}")


def generate(spec: GeneratorSpec) -> PointSequence:
    """Dispatch on ``spec.kind``."""
    return {
        "radial": gen_radial_geometric,
        "orthogonal": gen_orthogonal_directions,
        "random": gen_random_ball,
    }[spec.kind](spec)


def save_sequence(seq: PointSequence, path: str) -> None:
    write_json(
        path,
        {
            "dim": seq.dim,
            "label": seq.label,
            "points": [vector_to_pairs(p.coords) for p in seq],
        },
    )


def load_sequence(path: str) -> PointSequence:
    """Read and validate a sequence file; raises ValueError on any schema defect."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ValueError("sequence file must contain a JSON object")
    for key in ("dim", "points"):
        if key not in data:
            raise ValueError(f"sequence file missing key {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    raw_points = data["points"]
    if not isinstance(raw_points, list) or not raw_points:
        raise ValueError("points must be a nonempty list")
    pts = []
    for i, raw in enumerate(raw_points):
        if not isinstance(raw, list) or len(raw) != dim:
            raise ValueError(f"point {i} must be a list of {dim} [re, im] pairs")
        coords = [pair_to_complex(pair, f"point {i} coordinate") for pair in raw]
        pts.append(BallPoint(coords))
    return PointSequence(pts, label=str(data.get("label", "")))


def save_values(alpha: np.ndarray, path: str) -> None:
    write_json(path, {"alpha": vector_to_pairs(np.asarray(alpha, dtype=np.complex128))})


def load_values(path: str) -> np.ndarray:
    """Read a target-value file into a complex vector."""
    data = read_json(path)
    if not isinstance(data, dict) or "alpha" not in data:
        raise ValueError('value file must be a JSON object with key "alpha"')
    raw = data["alpha"]
    if not isinstance(raw, list) or not raw:
        raise ValueError("alpha must be a nonempty list of [re, im] pairs")
    return np.array(
        [pair_to_complex(p, f"alpha[{i}]") for i, p in enumerate(raw)],
        dtype=np.complex128,
    )
