"""Combinatorial depths: halfspace (Tukey), its regions, and simplicial depth.

Values are exact fractions of counts, so equal inputs give bitwise equal
outputs.  The planar halfspace depth uses the angular sweep over critical
directions; Tukey regions intersect the finitely many binding halfplanes;
simplicial depth enumerates closed simplices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cloud import DataCloud
from .core import clamp_depth
from .errors import (
    DimensionMismatchError,
    EnumerationTooLargeError,
    InvalidAlphaError,
)
from .geometry import ConvexRegion, clip_polygon_halfplane, convex_hull
from .lp import feasible
from .rng import unit_directions

SIMPLEX_ENUMERATION_CAP = 2_000_000


@dataclass(frozen=True)
class DirectionBudget:
    """Size and seed of a pseudo-random direction sample."""

    count: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("direction count must be at least 1")


# ---------------------------------------------------------------------------
# halfspace depth
# ---------------------------------------------------------------------------


def halfspace_depth_1d(z: float, cloud: DataCloud) -> float:
    """min(#{x <= z}, #{x >= z}) / n."""
    cloud.require_dim(1)
    values = cloud.points[:, 0]
    zf = float(np.asarray(z).reshape(-1)[0])
    le = int(np.count_nonzero(values <= zf))
    ge = int(np.count_nonzero(values >= zf))
    return min(le, ge) / cloud.n


def halfspace_depth_2d(z, cloud: DataCloud) -> float:
    """Exact planar halfspace depth by the angular sweep.

    The count of points in the closed halfplane with normal at angle phi is
    piecewise constant between the critical angles (the data directions
    rotated a quarter turn), so the minimum over all halfplanes is the
    minimum over one direction per angular interval; points coincident with
    z lie in every halfplane.
    """
    cloud.require_dim(2)
    q = cloud.point_of(z)
    rel = cloud.points - q
    dist = np.linalg.norm(rel, axis=1)
    tol = cloud.coord_tol
    coincident = int(np.count_nonzero(dist <= tol))
    rel = rel[dist > tol]
    if rel.shape[0] == 0:
        return 1.0
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    crit = np.unique(np.concatenate([ang + 0.5 * np.pi, ang - 0.5 * np.pi]) % (2.0 * np.pi))
    gaps = np.diff(np.concatenate([crit, [crit[0] + 2.0 * np.pi]]))
    mids = (crit + gaps / 2.0) % (2.0 * np.pi)
    dirs = np.column_stack([np.cos(mids), np.sin(mids)])
    counts = np.count_nonzero(dirs @ rel.T > 0.0, axis=1)
    return (int(counts.min()) + coincident) / cloud.n


def halfspace_depth(z, cloud: DataCloud) -> float:
    """Exact halfspace depth, d <= 2."""
    if cloud.d == 1:
        return halfspace_depth_1d(z, cloud)
    if cloud.d == 2:
        return halfspace_depth_2d(z, cloud)
    raise DimensionMismatchError(
        "exact halfspace depth is available in d <= 2; use random_tukey_depth beyond"
    )


def halfspace_depth_many(zs: np.ndarray, cloud: DataCloud) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    if zs.ndim == 1:
        zs = zs.reshape(-1, cloud.d)
    return np.array([halfspace_depth(z, cloud) for z in zs])


def random_tukey_depth(z, cloud: DataCloud, budget: DirectionBudget = DirectionBudget()) -> float:
    """Minimum univariate halfspace depth over seeded random directions.

    Never below the exact halfspace depth: every direction is a witness, so
    the minimum over a finite set is an upper bound, weakly decreasing as the
    budget grows with the same seed.
    """
    q = cloud.point_of(z)
    dirs = unit_directions(cloud.d, budget.count, budget.seed)
    # project the differences, not the raw coordinates: a query equal to a
    # data point keeps its exact zero row under translation and scaling
    proj = dirs @ (cloud.points - q).T
    le = np.count_nonzero(proj <= 0.0, axis=1)
    ge = np.count_nonzero(proj >= 0.0, axis=1)
    return int(np.minimum(le, ge).min()) / cloud.n


def _collinear_frame(pts: np.ndarray, tol: float):
    """If the cloud spans a line (or a point), return (origin, axis) else None."""
    center = pts.mean(axis=0)
    dev = pts - center
    _, s, vt = np.linalg.svd(dev, full_matrices=False)
    if s.shape[0] < 2 or s[1] <= tol * max(s[0], 1.0):
        return center, vt[0]
    return None


def tukey_region_2d(cloud: DataCloud, alpha: float) -> ConvexRegion:
    """Upper level set {z : halfspace depth >= alpha} of a planar cloud.

    With k = ceil(n alpha), the region is the intersection over the critical
    directions u (normals of pairwise differences) of the halfplanes
    {z : <u, z> <= k-th largest projection}; a padded bounding box is clipped
    by each halfplane in turn.  May be empty, a point, or a segment.
    """
    cloud.require_dim(2)
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1], got {alpha}")
    n = cloud.n
    k = int(math.ceil(n * alpha - 1e-9))
    k = max(k, 1)
    pts = cloud.points
    tol = cloud.coord_tol

    frame = _collinear_frame(pts, 1e-12)
    if frame is not None:
        center, axis = frame
        t = (pts - center) @ axis
        t_sorted = np.sort(t)
        lo, hi = t_sorted[k - 1], t_sorted[n - k]
        if lo > hi + tol:
            return ConvexRegion.empty(2)
        return ConvexRegion.from_points(
            np.array([center + lo * axis, center + hi * axis])
        )

    iu, ju = np.triu_indices(n, k=1)
    diffs = pts[iu] - pts[ju]
    keep = np.linalg.norm(diffs, axis=1) > tol
    diffs = diffs[keep]
    normals = np.column_stack([-diffs[:, 1], diffs[:, 0]])
    normals = np.vstack([normals, -normals])
    normals /= np.linalg.norm(normals, axis=1)[:, None]

    proj = normals @ pts.T
    # k-th largest projection per direction
    h = np.partition(proj, n - k, axis=1)[:, n - k]

    lo, hi = pts.min(axis=0), pts.max(axis=0)
    pad = 0.5 * max(float(np.max(hi - lo)), 1.0)
    box = np.array([
        [lo[0] - pad, lo[1] - pad],
        [hi[0] + pad, lo[1] - pad],
        [hi[0] + pad, hi[1] + pad],
        [lo[0] - pad, hi[1] + pad],
    ])
    poly = box
    for u, bound in zip(normals, h):
        poly = clip_polygon_halfplane(poly, u, float(bound), tol)
        if poly.shape[0] == 0:
            return ConvexRegion.empty(2)
    return ConvexRegion(2, convex_hull(poly))


def halfspace_region(cloud: DataCloud, alpha: float) -> ConvexRegion:
    """Halfspace-depth central region for d <= 2."""
    if cloud.d == 2:
        return tukey_region_2d(cloud, alpha)
    if cloud.d != 1:
        raise DimensionMismatchError("halfspace regions are available in d <= 2")
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1], got {alpha}")
    n = cloud.n
    k = max(int(math.ceil(n * alpha - 1e-9)), 1)
    values = np.sort(cloud.points[:, 0])
    if values[k - 1] > values[n - k]:
        return ConvexRegion.empty(1)
    return ConvexRegion.interval(values[k - 1], values[n - k])


# ---------------------------------------------------------------------------
# simplicial depth
# ---------------------------------------------------------------------------


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segment_contains(a, b, q, tol: float) -> bool:
    lo = np.minimum(a, b) - tol
    hi = np.maximum(a, b) + tol
    return bool(np.all(q >= lo) and np.all(q <= hi))


def _triangle_contains(a, b, c, q, tol: float) -> bool:
    d1 = _orient(a, b, q)
    d2 = _orient(b, c, q)
    d3 = _orient(c, a, q)
    area = _orient(a, b, c)
    if area == 0.0:
        # degenerate triangle: closed hull is a segment (or point)
        if abs(d1) > tol or abs(d2) > tol or abs(d3) > tol:
            return False
        return (
            _segment_contains(a, b, q, tol)
            or _segment_contains(b, c, q, tol)
            or _segment_contains(a, c, q, tol)
        )
    if area > 0.0:
        return d1 >= 0.0 and d2 >= 0.0 and d3 >= 0.0
    return d1 <= 0.0 and d2 <= 0.0 and d3 <= 0.0


def simplicial_depth(z, cloud: DataCloud) -> float:
    """Fraction of closed data simplices (d+1 vertices) containing z.

    Exact enumeration; raises when the number of simplices exceeds the
    enumeration cap.  Supported for d <= 4.
    """
    q = cloud.point_of(z)
    n, d = cloud.n, cloud.d
    if d > 4:
        raise DimensionMismatchError("simplicial depth enumeration is limited to d <= 4")
    if n < d + 1:
        raise ValueError(f"need at least d+1={d + 1} points, got n={n}")
    total = math.comb(n, d + 1)
    if total > SIMPLEX_ENUMERATION_CAP:
        raise EnumerationTooLargeError(
            f"C({n}, {d + 1}) = {total} simplices exceeds the cap {SIMPLEX_ENUMERATION_CAP}"
        )
    pts = cloud.points
    tol = cloud.coord_tol
    count = 0
    if d == 1:
        values = pts[:, 0]
        zf = q[0]
        less = int(np.count_nonzero(values < zf - tol))
        more = int(np.count_nonzero(values > zf + tol))
        # a segment misses z exactly when both endpoints fall on one strict side
        count = total - math.comb(less, 2) - math.comb(more, 2)
        return clamp_depth(count / total)
    if d == 2:
        for i, j, k in combinations(range(n), 3):
            if _triangle_contains(pts[i], pts[j], pts[k], q, tol):
                count += 1
        return clamp_depth(count / total)
    for combo in combinations(range(n), d + 1):
        sub = pts[list(combo)]
        mat = np.vstack([sub.T, np.ones(d + 1)])
        rhs = np.concatenate([q, [1.0]])
        try:
            lam = np.linalg.solve(mat, rhs)
            inside = bool(np.all(lam >= -1e-9))
        except np.linalg.LinAlgError:
            # degenerate simplex: fall back to hull-membership feasibility
            inside = feasible(mat, rhs)
        if inside:
            count += 1
    return clamp_depth(count / total)


def simplicial_depth_many(zs: np.ndarray, cloud: DataCloud) -> np.ndarray:
    """Vectorized planar simplicial depth for grids of query points.

    Sign tests per triangle edge carry a small relative slack: the expanded
    cross product leaves ~ulp residuals when a query coincides with a vertex,
    and those must count as inside to agree with the scalar path.
    """
    cloud.require_dim(2)
    zs = np.asarray(zs, dtype=float).reshape(-1, 2)
    pts = cloud.points
    n = cloud.n
    total = math.comb(n, 3)
    if total > SIMPLEX_ENUMERATION_CAP:
        raise EnumerationTooLargeError(
            f"C({n}, 3) = {total} simplices exceeds the cap {SIMPLEX_ENUMERATION_CAP}"
        )
    tri = np.array(list(combinations(range(n), 3)))
    a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
    ab, ac = b - a, c - a
    area = ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0]
    sign = np.where(area >= 0.0, 1.0, -1.0)

    def edge_terms(p1, p2):
        # cross(p2 - p1, z - p1) as coefficients (cx, cy, const) of z
        ex = p2[:, 0] - p1[:, 0]
        ey = p2[:, 1] - p1[:, 1]
        const = ey * p1[:, 0] - ex * p1[:, 1]
        return -ey, ex, const

    terms = [edge_terms(a, b), edge_terms(b, c), edge_terms(c, a)]
    scale = max(float(np.max(np.abs(pts))), float(np.max(np.abs(zs))) if zs.size else 0.0, 1.0)
    slack = 1e-12 * scale * scale
    out = np.empty(zs.shape[0])
    chunk = max(1, int(2.0e6 // max(total, 1)))
    for start in range(0, zs.shape[0], chunk):
        block = zs[start:start + chunk]
        inside = np.ones((block.shape[0], total), dtype=bool)
        for cx, cy, const in terms:
            val = block[:, 0:1] * cx[None, :] + block[:, 1:2] * cy[None, :] + const[None, :]
            inside &= (val * sign[None, :]) >= -slack
        out[start:start + chunk] = inside.sum(axis=1) / total
    return out
