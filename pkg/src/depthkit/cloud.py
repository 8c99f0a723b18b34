"""Finite point clouds, the empirical carrier of every depth function here."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

# Geometric predicates use this absolute tolerance after scaling coordinates
# to the cloud's bounding box.
COORD_REL_TOL = 1e-9


def _as_points(values) -> np.ndarray:
    pts = np.asarray(values, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2:
        raise ValueError(f"points must be a (n, d) array, got shape {pts.shape}")
    if pts.shape[0] < 1 or pts.shape[1] < 1:
        raise ValueError(f"need at least one point and one coordinate, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


@dataclass(frozen=True)
class DataCloud:
    """Immutable empirical sample of n points in R^d.

    ``points`` is an (n, d) float array; a 1-D input is treated as n scalars.
    Optional ``labels`` name the points (one label per row).
    """

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = _as_points(self.points)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != pts.shape[0]:
                raise ValueError(f"{len(labels)} labels for {pts.shape[0]} points")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def extent(self) -> float:
        """Largest bounding-box edge length, 0.0 for a single point."""
        return float(np.max(np.ptp(self.points, axis=0))) if self.n > 1 else 0.0

    @property
    def coord_tol(self) -> float:
        """Absolute coordinate tolerance scaled to the bounding box."""
        return COORD_REL_TOL * max(1.0, self.extent)

    @property
    def mean(self) -> np.ndarray:
        return self.points.mean(axis=0)

    def require_dim(self, d: int) -> None:
        if self.d != d:
            raise DimensionMismatchError(f"cloud has dimension {self.d}, expected {d}")

    def point_of(self, z) -> np.ndarray:
        """Validate a query point against this cloud's dimension."""
        q = np.asarray(z, dtype=float).reshape(-1)
        if q.shape[0] != self.d:
            raise DimensionMismatchError(
                f"query point has dimension {q.shape[0]}, cloud has {self.d}"
            )
        if not np.all(np.isfinite(q)):
            raise ValueError("query point must be finite")
        return q

    def translated(self, b) -> "DataCloud":
        b = np.asarray(b, dtype=float).reshape(-1)
        return DataCloud(self.points + b, self.labels)

    def linear_mapped(self, a) -> "DataCloud":
        a = np.asarray(a, dtype=float)
        return DataCloud(self.points @ a.T, self.labels)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.points).tobytes())
        if self.labels:
            h.update("\x1f".join(self.labels).encode())
        return h.hexdigest()[:16]
