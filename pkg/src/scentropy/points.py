"""Point clouds in the plane or in space, plus the sample generators.

Point file format: one point per line, whitespace-separated coordinates,
'#' comments; the dimension is inferred from the first content line.
"""

from __future__ import annotations

import numpy as np

from ._parsing import ParseError, content_lines, parse_floats

__all__ = [
    "PointCloud",
    "generate_square_grid",
    "generate_triangular_grid",
    "sample_sphere_uniform",
    "add_uniform_noise",
    "parse_points",
    "format_points",
]


class PointCloud:
    """Immutable array of points with a common ambient dimension (2 or 3)."""

    __slots__ = ("points",)

    def __init__(self, points):
        arr = np.array(points, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("point cloud must be a nonempty 2-d array")
        if arr.shape[1] not in (2, 3):
            raise ValueError(f"ambient dimension must be 2 or 3, got {arr.shape[1]}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "points", arr)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("PointCloud is immutable")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def pairwise_distances(self) -> np.ndarray:
        """Dense n-by-n Euclidean distance matrix."""
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt((diff * diff).sum(axis=2))

    def __repr__(self):
        return f"PointCloud(n={self.n}, d={self.d})"


def generate_square_grid(k: int, spacing: float) -> PointCloud:
    """k-by-k square grid, row-major from the origin."""
    _check_grid_args(k, spacing)
    pts = [(ix * spacing, iy * spacing) for iy in range(k) for ix in range(k)]
    return PointCloud(pts)


def generate_triangular_grid(k: int, spacing: float) -> PointCloud:
    """k-by-k triangular grid: odd rows shift by spacing/2, rows rise by
    spacing * sqrt(3)/2, so nearest neighbors sit exactly one spacing apart."""
    _check_grid_args(k, spacing)
    row_height = spacing * np.sqrt(3.0) / 2.0
    pts = [(ix * spacing + (iy % 2) * spacing / 2.0, iy * row_height)
           for iy in range(k) for ix in range(k)]
    return PointCloud(pts)


def _check_grid_args(k: int, spacing: float) -> None:
    if k < 1:
        raise ValueError("grid size k must be at least 1")
    if not spacing > 0:
        raise ValueError("spacing must be positive")


def sample_sphere_uniform(count: int, seed: int) -> PointCloud:
    """Area-uniform sample of the unit sphere: z uniform in [-1, 1], azimuth
    uniform in [0, 2*pi).  Deterministic per seed."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1.0, 1.0, count)
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    pts = np.column_stack([rho * np.cos(theta), rho * np.sin(theta), z])
    return PointCloud(pts)


def add_uniform_noise(cloud: PointCloud, amplitude: float, spacing: float,
                      seed: int) -> PointCloud:
    """Perturb every coordinate by an independent uniform draw in
    [-amplitude * spacing, +amplitude * spacing].  Deterministic per seed."""
    if amplitude < 0:
        raise ValueError("noise amplitude must be non-negative")
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    a = amplitude * spacing
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-a, a, cloud.points.shape)
    return PointCloud(cloud.points + noise)


def parse_points(text: str) -> PointCloud:
    rows = []
    dim = None
    for line_no, line in content_lines(text):
        coords = parse_floats(line_no, line, "point coordinates")
        if dim is None:
            dim = len(coords)
            if dim not in (2, 3):
                raise ParseError(line_no, f"points must be 2-d or 3-d, got {dim}-d")
        elif len(coords) != dim:
            raise ParseError(line_no, f"expected {dim} coordinates, got {len(coords)}")
        rows.append(coords)
    if not rows:
        raise ParseError(1, "empty points file")
    return PointCloud(rows)


def format_points(cloud: PointCloud) -> str:
    lines = (" ".join(f"{x:.17g}" for x in row) for row in cloud.points)
    return "\n".join(lines) + "\n"
