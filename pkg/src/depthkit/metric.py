"""Depths built from distances: L2, Mahalanobis, projection, and simplex volume.

All of them arise as (1 + Out(z))^-1 for an outlyingness Out measured with a
plain or scatter-adjusted metric.  The scatter seam is
:class:`ScatterEstimator`; the moment estimator (mean and covariance with
divisor n) is the default and any affine-equivariant replacement plugs in.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cloud import DataCloud
from .core import clamp_depth
from .errors import SingularScatterError, ZeroMadError
from .geometry import ConvexRegion


@dataclass(frozen=True)
class ScatterEstimator:
    """Named rule mapping a cloud to a center and an SPD scatter matrix."""

    name: str
    rule: Callable[[DataCloud], tuple[np.ndarray, np.ndarray]]

    def estimate(self, cloud: DataCloud) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (center, scatter, cholesky factor); reject non-SPD scatter."""
        center, scatter = self.rule(cloud)
        center = np.asarray(center, dtype=float).reshape(-1)
        scatter = np.asarray(scatter, dtype=float)
        if center.shape[0] != cloud.d or scatter.shape != (cloud.d, cloud.d):
            raise ValueError(f"estimator {self.name!r} returned malformed output")
        try:
            chol = np.linalg.cholesky(scatter)
        except np.linalg.LinAlgError:
            raise SingularScatterError(
                f"scatter of estimator {self.name!r} is not positive definite"
            ) from None
        # an exactly singular matrix often factors with a residual pivot near
        # sqrt(eps) * scale, so the threshold must sit well above that noise
        if np.min(np.diag(chol)) <= 1e-7 * float(np.max(np.diag(chol))):
            raise SingularScatterError(
                f"scatter of estimator {self.name!r} is numerically singular"
            )
        return center, scatter, chol


def _moment_rule(cloud: DataCloud) -> tuple[np.ndarray, np.ndarray]:
    center = cloud.points.mean(axis=0)
    dev = cloud.points - center
    return center, dev.T @ dev / cloud.n


#: Mean and covariance with divisor n.
MOMENT = ScatterEstimator("moment", _moment_rule)


class MNorm:
    """Norm ||z||_M = sqrt(z' M^-1 z) for a symmetric positive definite M."""

    def __init__(self, m: np.ndarray):
        m = np.asarray(m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("M must be square")
        try:
            self._chol = np.linalg.cholesky(m)
        except np.linalg.LinAlgError:
            raise SingularScatterError("M-norm matrix is not positive definite") from None
        self.matrix = m

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=float).reshape(-1)
        w = np.linalg.solve(self._chol, z)
        return float(np.linalg.norm(w))

    def of_rows(self, rows: np.ndarray) -> np.ndarray:
        w = np.linalg.solve(self._chol, rows.T)
        return np.linalg.norm(w, axis=0)


# ---------------------------------------------------------------------------
# L2 depths
# ---------------------------------------------------------------------------


def l2_depth(z, cloud: DataCloud) -> float:
    """(1 + mean Euclidean distance to the sample)^-1.

    Invariant under rigid motions but deliberately not under general affine
    maps; see ``affine_invariant_l2_depth`` for the scatter-whitened form.
    """
    q = cloud.point_of(z)
    mean_dist = float(np.mean(np.linalg.norm(cloud.points - q, axis=1)))
    return clamp_depth(1.0 / (1.0 + mean_dist))


def l2_depth_many(zs: np.ndarray, cloud: DataCloud) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    dists = np.linalg.norm(zs[:, None, :] - cloud.points[None, :, :], axis=2)
    return 1.0 / (1.0 + dists.mean(axis=1))


def affine_invariant_l2_depth(z, cloud: DataCloud, estimator: ScatterEstimator = MOMENT) -> float:
    """L2 depth in the metric of the estimated scatter."""
    q = cloud.point_of(z)
    _, _, chol = estimator.estimate(cloud)
    w = np.linalg.solve(chol, (cloud.points - q).T)
    mean_dist = float(np.mean(np.linalg.norm(w, axis=0)))
    return clamp_depth(1.0 / (1.0 + mean_dist))


def affine_invariant_l2_depth_many(zs: np.ndarray, cloud: DataCloud,
                                   estimator: ScatterEstimator = MOMENT) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    _, _, chol = estimator.estimate(cloud)
    white_pts = np.linalg.solve(chol, cloud.points.T).T
    white_zs = np.linalg.solve(chol, zs.T).T
    dists = np.linalg.norm(white_zs[:, None, :] - white_pts[None, :, :], axis=2)
    return 1.0 / (1.0 + dists.mean(axis=1))


# ---------------------------------------------------------------------------
# Mahalanobis depth
# ---------------------------------------------------------------------------


def mahalanobis_depth(z, cloud: DataCloud, estimator: ScatterEstimator = MOMENT) -> float:
    """(1 + squared scatter distance to the center)^-1."""
    q = cloud.point_of(z)
    center, _, chol = estimator.estimate(cloud)
    w = np.linalg.solve(chol, q - center)
    return clamp_depth(1.0 / (1.0 + float(w @ w)))


def mahalanobis_depth_many(zs: np.ndarray, cloud: DataCloud,
                           estimator: ScatterEstimator = MOMENT) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    center, _, chol = estimator.estimate(cloud)
    w = np.linalg.solve(chol, (zs - center).T)
    return 1.0 / (1.0 + np.sum(w * w, axis=0))


def mahalanobis_region(cloud: DataCloud, alpha: float,
                       estimator: ScatterEstimator = MOMENT,
                       n_vertices: int = 128) -> ConvexRegion:
    """Level set {z : depth >= alpha}: an ellipse polygonized at ``n_vertices``.

    The boundary is ||z - c||^2 = 1/alpha - 1 in the scatter metric, so the
    polygon is the cholesky image of a regular circle scaled by the radius.
    In d=1 the region is the exact interval.
    """
    from .errors import InvalidAlphaError

    if not 0.0 < alpha <= 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1], got {alpha}")
    center, _, chol = estimator.estimate(cloud)
    radius = math.sqrt(max(1.0 / alpha - 1.0, 0.0))
    if cloud.d == 1:
        half = radius * float(chol[0, 0])
        return ConvexRegion.interval(float(center[0]) - half, float(center[0]) + half)
    if cloud.d != 2:
        raise ValueError("regions are available in d <= 2")
    if radius == 0.0:
        return ConvexRegion.single(center)
    theta = np.linspace(0.0, 2.0 * np.pi, n_vertices, endpoint=False)
    circle = np.column_stack([np.cos(theta), np.sin(theta)])
    return ConvexRegion.from_points(center + radius * (circle @ chol.T))


# ---------------------------------------------------------------------------
# projection depth
# ---------------------------------------------------------------------------


def _median(values: np.ndarray) -> float:
    # midpoint convention for even counts
    return float(np.median(values))


class ProjectionIndex:
    """Precomputed direction set plus per-direction location and spread.

    Directions are the scatter-whitened pairwise differences of the cloud
    augmented with ``budget`` seeded whitened random combinations with
    zero-sum coefficients.  Both families transform consistently under
    invertible linear maps and translations, making the approximate depth
    exactly affine invariant (up to float noise) for a fixed seed.
    """

    def __init__(self, cloud: DataCloud, budget: int, seed: int):
        if budget < 1:
            raise ValueError("direction budget must be at least 1")
        pts = cloud.points
        n, d = pts.shape
        dev = pts - pts.mean(axis=0)
        scatter = dev.T @ dev / n
        try:
            chol = np.linalg.cholesky(scatter)
        except np.linalg.LinAlgError:
            raise ZeroMadError(
                "cloud spans a lower-dimensional flat: projections on its normal "
                "have zero median absolute deviation"
            ) from None
        iu, ju = np.triu_indices(n, k=1)
        diffs = pts[iu] - pts[ju]
        keep = np.linalg.norm(diffs, axis=1) > 1e-12
        rng = np.random.default_rng(seed)
        combos = np.empty((budget, d))
        for k in range(budget):
            g = rng.standard_normal(n)
            g -= g.mean()
            combos[k] = g @ pts
        raw = np.vstack([diffs[keep], combos])
        white = np.linalg.solve(scatter, raw.T).T
        norms = np.linalg.norm(white, axis=1)
        good = norms > 1e-12
        dirs = white[good] / norms[good, None]
        proj = dirs @ pts.T
        med = np.median(proj, axis=1)
        mad = np.median(np.abs(proj - med[:, None]), axis=1)
        if np.any(mad <= 1e-12 * max(1.0, float(np.max(np.abs(proj))))):
            raise ZeroMadError(
                "a projection of the sample has zero median absolute deviation"
            )
        self.dirs = dirs
        self.med = med
        self.mad = mad

    def outlyingness(self, zs: np.ndarray) -> np.ndarray:
        proj = zs @ self.dirs.T
        return np.max(np.abs(proj - self.med) / self.mad, axis=1)


def projection_depth(z, cloud: DataCloud, direction_budget: int = 1000, seed: int = 0) -> float:
    """(1 + sup over directions of |<p,z> - med| / medMAD)^-1.

    d=1 is exact.  For d >= 2 the supremum is approximated from above by a
    finite direction set, so the returned value is an upper bound on the true
    depth and weakly decreases as ``direction_budget`` grows with the same
    seed.
    """
    q = cloud.point_of(z)
    if cloud.d == 1:
        values = cloud.points[:, 0]
        med = _median(values)
        mad = _median(np.abs(values - med))
        if mad <= 0.0:
            raise ZeroMadError("sample median absolute deviation is zero")
        return clamp_depth(1.0 / (1.0 + abs(q[0] - med) / mad))
    index = ProjectionIndex(cloud, direction_budget, seed)
    out = float(index.outlyingness(q.reshape(1, -1))[0])
    return clamp_depth(1.0 / (1.0 + out))


def projection_depth_many(zs: np.ndarray, cloud: DataCloud,
                          direction_budget: int = 1000, seed: int = 0) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    if cloud.d == 1:
        return np.array([projection_depth(z, cloud) for z in zs])
    index = ProjectionIndex(cloud, direction_budget, seed)
    return 1.0 / (1.0 + index.outlyingness(zs))


# ---------------------------------------------------------------------------
# simplex-volume (Oja) depth
# ---------------------------------------------------------------------------


def _oja_expected_volume(q: np.ndarray, cloud: DataCloud) -> float:
    """Mean volume of the simplex spanned by z and d points drawn i.i.d.

    Tuples with a repeated index span a degenerate simplex of volume zero, so
    the expectation over the n^d ordered tuples reduces to a sum over the
    d-element subsets: each contributes |det(x_i - z)| / n^d.
    """
    pts = cloud.points
    n, d = pts.shape
    if d == 1:
        return float(np.mean(np.abs(pts[:, 0] - q[0])))
    if d == 2:
        rel = pts - q
        iu, ju = np.triu_indices(n, k=1)
        dets = rel[iu, 0] * rel[ju, 1] - rel[iu, 1] * rel[ju, 0]
        return float(np.sum(np.abs(dets))) / n**2
    total = 0.0
    rel = pts - q
    for combo in itertools.combinations(range(n), d):
        total += abs(np.linalg.det(rel[list(combo)]))
    return total / n**d


def oja_depth(z, cloud: DataCloud, estimator: ScatterEstimator = MOMENT) -> float:
    """(1 + E[simplex volume] / sqrt(det scatter))^-1, exact enumeration."""
    q = cloud.point_of(z)
    if cloud.n < cloud.d:
        raise ValueError(f"need at least d={cloud.d} points, got n={cloud.n}")
    _, scatter, chol = estimator.estimate(cloud)
    root_det = float(np.prod(np.diag(chol)))
    return clamp_depth(1.0 / (1.0 + _oja_expected_volume(q, cloud) / root_det))


def oja_depth_many(zs: np.ndarray, cloud: DataCloud,
                   estimator: ScatterEstimator = MOMENT) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    _, _, chol = estimator.estimate(cloud)
    root_det = float(np.prod(np.diag(chol)))
    if cloud.d == 2:
        pts = cloud.points
        n = cloud.n
        iu, ju = np.triu_indices(n, k=1)
        # det(x_i - z, x_j - z) is affine in z: c_ij - cross(x_i - x_j, z)
        c = pts[iu, 0] * pts[ju, 1] - pts[iu, 1] * pts[ju, 0]
        dx = pts[iu] - pts[ju]
        dets = c[None, :] - (dx[None, :, 0] * zs[:, 1:2] - dx[None, :, 1] * zs[:, 0:1])
        vol = np.sum(np.abs(dets), axis=1) / n**2
        return 1.0 / (1.0 + vol / root_det)
    return np.array([oja_depth(z, cloud, estimator) for z in zs])
