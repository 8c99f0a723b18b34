"""Convex regions in dimension one and two, and the exact geometry on them.

A ``ConvexRegion`` is stored canonically: in d=1 as a sorted pair of interval
endpoints (possibly equal), in d=2 as the counterclockwise vertex list of the
convex hull starting at the lexicographically smallest vertex, with collinear
vertices dropped.  Degenerate polygons (a point, a segment) are valid regions.
An empty region carries zero vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyRegionError


def _coord_scale(pts: np.ndarray) -> float:
    if pts.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(pts))))


def convex_hull(points: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Monotone-chain convex hull, CCW, collinear points dropped.

    Returns an (m, 2) array; m is 1 for coincident input, 2 for collinear
    input.  ``eps`` is the cross-product threshold below which three points
    count as collinear; by default it scales with the square of the
    coordinate magnitude.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("convex_hull expects an (n, 2) array")
    if eps is None:
        eps = 1e-12 * _coord_scale(pts) ** 2
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(np.abs(np.diff(pts, axis=0)) > 0, axis=1)
    pts = pts[keep]
    if len(pts) == 1:
        return pts.copy()

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= eps:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) == 0:
        hull = pts[:1].copy()
    return hull


def point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(p - a))
    t = np.clip(float((p - a) @ ab) / denom, 0.0, 1.0)
    return float(np.linalg.norm(p - (a + t * ab)))


@dataclass(frozen=True)
class ConvexRegion:
    """Closed convex set given by its extreme points (canonical form)."""

    dim: int
    vertices: np.ndarray

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float).reshape(-1, self.dim)
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(dim: int) -> "ConvexRegion":
        return ConvexRegion(dim, np.zeros((0, dim)))

    @staticmethod
    def interval(lo: float, hi: float) -> "ConvexRegion":
        if hi < lo:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        if hi == lo:
            return ConvexRegion(1, np.array([[float(lo)]]))
        return ConvexRegion(1, np.array([[float(lo)], [float(hi)]]))

    @staticmethod
    def single(point) -> "ConvexRegion":
        p = np.asarray(point, dtype=float).reshape(1, -1)
        return ConvexRegion(p.shape[1], p)

    @staticmethod
    def from_points(points, eps: float | None = None) -> "ConvexRegion":
        """Convex hull of a point set (d=1 interval, d=2 polygon)."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.shape[0] == 0:
            return ConvexRegion.empty(pts.shape[1] if pts.ndim == 2 else 1)
        if pts.shape[1] == 1:
            return ConvexRegion.interval(float(pts.min()), float(pts.max()))
        if pts.shape[1] == 2:
            return ConvexRegion(2, convex_hull(pts, eps))
        raise ValueError(f"regions support d in {{1, 2}}, got d={pts.shape[1]}")

    # -- basic queries -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.vertices.shape[0] == 0

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def lo(self) -> float:
        if self.dim != 1 or self.is_empty:
            raise ValueError("lo is defined for nonempty 1-D regions")
        return float(self.vertices[0, 0])

    @property
    def hi(self) -> float:
        if self.dim != 1 or self.is_empty:
            raise ValueError("hi is defined for nonempty 1-D regions")
        return float(self.vertices[-1, 0])

    def support(self, p) -> float:
        """Support function max_{v in region} <p, v>."""
        if self.is_empty:
            raise EmptyRegionError("support function of an empty region")
        p = np.asarray(p, dtype=float).reshape(-1)
        return float(np.max(self.vertices @ p))

    def contains(self, z, tol: float = 0.0) -> bool:
        if self.is_empty:
            return False
        z = np.asarray(z, dtype=float).reshape(-1)
        if z.shape[0] != self.dim:
            raise ValueError(f"point of dimension {z.shape[0]} vs region dimension {self.dim}")
        v = self.vertices
        if self.dim == 1:
            return (self.lo - tol) <= z[0] <= (self.hi + tol)
        if v.shape[0] == 1:
            return float(np.linalg.norm(z - v[0])) <= tol
        if v.shape[0] == 2:
            return point_segment_distance(z, v[0], v[1]) <= tol
        edges = np.roll(v, -1, axis=0) - v
        rel = z - v
        cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
        lengths = np.linalg.norm(edges, axis=1)
        return bool(np.all(cross >= -tol * np.maximum(lengths, 1e-300)))

    def contains_region(self, other: "ConvexRegion", tol: float = 0.0) -> bool:
        """True if ``other`` is a subset (convexity: vertex test suffices)."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return all(self.contains(v, tol) for v in other.vertices)

    def distance(self, z) -> float:
        """Euclidean distance from a point to the region (0 inside)."""
        if self.is_empty:
            raise EmptyRegionError("distance to an empty region")
        z = np.asarray(z, dtype=float).reshape(-1)
        if self.dim == 1:
            return max(self.lo - z[0], z[0] - self.hi, 0.0)
        v = self.vertices
        if v.shape[0] == 1:
            return float(np.linalg.norm(z - v[0]))
        if self.contains(z, 0.0):
            return 0.0
        m = v.shape[0]
        return min(
            point_segment_distance(z, v[i], v[(i + 1) % m]) for i in range(m)
        )

    def hausdorff(self, other: "ConvexRegion") -> float:
        """Exact Hausdorff distance between convex regions.

        The supremum of distance-to-a-convex-set over a polytope is attained
        at a vertex, so vertex sweeps in both directions are exact.
        """
        if self.is_empty or other.is_empty:
            raise EmptyRegionError("Hausdorff distance needs two nonempty regions")
        if self.dim != other.dim:
            raise ValueError("regions of different dimension")
        d_ab = max(other.distance(v) for v in self.vertices)
        d_ba = max(self.distance(v) for v in other.vertices)
        return max(d_ab, d_ba)

    def minkowski_sum(self, other: "ConvexRegion") -> "ConvexRegion":
        """Minkowski sum; the hull of pairwise vertex sums is exact here."""
        if self.dim != other.dim:
            raise ValueError("regions of different dimension")
        if self.is_empty or other.is_empty:
            return ConvexRegion.empty(self.dim)
        sums = (self.vertices[:, None, :] + other.vertices[None, :, :]).reshape(-1, self.dim)
        return ConvexRegion.from_points(sums)

    def scaled(self, factor: float) -> "ConvexRegion":
        if self.is_empty:
            return self
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return ConvexRegion(self.dim, self.vertices * float(factor))

    def translated(self, b) -> "ConvexRegion":
        if self.is_empty:
            return self
        b = np.asarray(b, dtype=float).reshape(-1)
        return ConvexRegion(self.dim, self.vertices + b)

    def convexity_defect(self) -> float:
        """Max violation of strict convexity over consecutive vertex triples.

        0.0 means every turn is strictly counterclockwise (after canonical
        construction this holds up to float noise); positive values measure
        the worst clockwise cross product.
        """
        v = self.vertices
        if self.dim != 2 or v.shape[0] <= 2:
            return 0.0
        e_in = v - np.roll(v, 1, axis=0)
        e_out = np.roll(v, -1, axis=0) - v
        cross = e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]
        return float(max(0.0, -np.min(cross)))

    def approx_equal(self, other: "ConvexRegion", tol: float) -> bool:
        if self.is_empty and other.is_empty:
            return True
        if self.is_empty or other.is_empty:
            return False
        return self.hausdorff(other) <= tol

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        if self.is_empty:
            raise EmptyRegionError("bounding box of an empty region")
        return self.vertices.min(axis=0), self.vertices.max(axis=0)


def clip_polygon_halfplane(verts: np.ndarray, u: np.ndarray, h: float, tol: float = 0.0) -> np.ndarray:
    """Clip a convex polygon (vertex list) by the halfplane {z : <u, z> <= h}.

    Standard single-plane Sutherland-Hodgman step.  Returns the possibly
    empty clipped vertex array; the caller re-canonicalizes.
    """
    m = verts.shape[0]
    if m == 0:
        return verts
    vals = verts @ u - h
    inside = vals <= tol
    if np.all(inside):
        return verts
    if not np.any(inside):
        return verts[:0]
    out = []
    for i in range(m):
        j = (i + 1) % m
        if inside[i]:
            out.append(verts[i])
        if inside[i] != inside[j]:
            denom = vals[i] - vals[j]
            t = vals[i] / denom if denom != 0.0 else 0.5
            out.append(verts[i] + t * (verts[j] - verts[i]))
    return np.array(out)
