"""Depths for grid-sampled curves built from multivariate base depths.

A curve is represented by its values on a shared argument grid in [0, 1].
Every operation here takes the minimum of a multivariate base depth over a
family of linear functionals applied to the curves:

* ``graph_depth``   uses the evaluation functionals x -> x(t),
* ``grid_depth``    uses weighted time combinations x -> x(t_) @ r over
  seeded unit directions r plus the coordinate axes,
* ``phi_depth``     accepts an arbitrary finite family of linear maps.

The minimum structure preserves translation invariance, scale invariance,
monotonicity and upper semicontinuity of the base depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cloud import DataCloud
from .combinatorial import DirectionBudget
from .errors import (
    EmptyTimeSetError,
    NonlinearFunctionalError,
    UnknownDepthError,
)
from .registry import DEFAULT_OPTIONS, EvalOptions, get_depth
from .rng import unit_directions

CurveFunctional = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FunctionalSample:
    """n curves sampled on a common grid: values array of shape (n, k, d)."""

    grid: np.ndarray
    curves: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float).reshape(-1)
        curves = np.asarray(self.curves, dtype=float)
        if curves.ndim == 2:
            curves = curves[:, :, np.newaxis]
        if curves.ndim != 3:
            raise ValueError("curves must have shape (n, k) or (n, k, d)")
        k = grid.shape[0]
        if k < 1:
            raise ValueError("argument grid must contain at least one point")
        if curves.shape[1] != k:
            raise ValueError(
                f"curves have {curves.shape[1]} grid values, grid has {k}")
        if curves.shape[0] < 1:
            raise ValueError("sample must contain at least one curve")
        if not np.all(np.isfinite(grid)) or not np.all(np.isfinite(curves)):
            raise ValueError("grid and curve values must be finite")
        if grid.min() < 0.0 or grid.max() > 1.0:
            raise ValueError("argument grid must lie in [0, 1]")
        if k > 1 and np.any(np.diff(grid) <= 0.0):
            raise ValueError("argument grid must be strictly increasing")
        grid.setflags(write=False)
        curves.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "curves", curves)

    @property
    def n(self) -> int:
        return self.curves.shape[0]

    @property
    def k(self) -> int:
        return self.curves.shape[1]

    @property
    def d(self) -> int:
        return self.curves.shape[2]

    def point_cloud(self, t_index: int) -> DataCloud:
        """Cloud of all curve values at one grid position."""
        return DataCloud(self.curves[:, t_index, :])

    def coerce_curve(self, z) -> np.ndarray:
        """Validate a query curve against this sample's grid shape."""
        z = np.asarray(z, dtype=float)
        if z.ndim == 1:
            z = z[:, np.newaxis]
        if z.shape != (self.k, self.d):
            raise ValueError(
                f"query curve must have shape ({self.k}, {self.d}), "
                f"got {z.shape}")
        if not np.all(np.isfinite(z)):
            raise ValueError("query curve values must be finite")
        return z

    def sup_norm(self, z) -> float:
        """Sampled supremum norm max_t |z(t)| used by the tail checks."""
        z = self.coerce_curve(z)
        return float(np.max(np.linalg.norm(z, axis=1)))


def _base_spec(base_depth: str):
    spec = get_depth(base_depth)
    if not spec.functional_base:
        raise UnknownDepthError(
            f"depth '{spec.name}' is not admissible as a functional base")
    return spec


def _time_indices(sample: FunctionalSample, t_indices) -> np.ndarray:
    if t_indices is None:
        idx = np.arange(sample.k)
    else:
        idx = np.asarray(list(t_indices), dtype=int).reshape(-1)
    if idx.size == 0:
        raise EmptyTimeSetError("the set of grid positions is empty")
    if idx.min() < 0 or idx.max() >= sample.k:
        raise ValueError(
            f"grid positions must lie in [0, {sample.k - 1}]")
    return idx


def graph_depth(z, sample: FunctionalSample, base_depth: str = "halfspace",
                t_indices: Sequence[int] | None = None,
                options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Minimum over grid positions of the pointwise base depth.

    With univariate data and the halfspace base this is the halfgraph
    depth of the query curve in the sample.
    """
    spec = _base_spec(base_depth)
    zc = sample.coerce_curve(z)
    idx = _time_indices(sample, t_indices)
    value = 1.0
    for j in idx:
        value = min(value, spec.evaluate(zc[j], sample.point_cloud(int(j)),
                                         options))
        if value == 0.0:
            break
    return value


def grid_depth(z, sample: FunctionalSample,
               t_indices: Sequence[int] | None = None,
               base_depth: str = "halfspace",
               budget: DirectionBudget = DirectionBudget(),
               options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Minimum base depth over weighted time combinations of the curves.

    Each unit direction r over the chosen grid positions induces the map
    x -> sum_m r_m x(t_m), a d-vector per curve; the reported value is the
    minimum over ``budget.count`` seeded directions plus the coordinate
    axes, an upper bound on the infimum that decreases with the budget.
    """
    spec = _base_spec(base_depth)
    zc = sample.coerce_curve(z)
    idx = _time_indices(sample, t_indices)
    kp = idx.size
    sub = sample.curves[:, idx, :]
    zsub = zc[idx, :]
    directions = np.vstack([np.eye(kp),
                            unit_directions(kp, budget.count, budget.seed)])
    # the query rides through the same contraction as the sample so a curve
    # that coincides with a sample curve projects bitwise identically
    stacked = np.concatenate([sub, zsub[np.newaxis]], axis=0)
    value = 1.0
    for r in directions:
        proj = np.einsum("m,nmd->nd", r, stacked)
        value = min(value, spec.evaluate(proj[-1], DataCloud(proj[:-1]), options))
        if value == 0.0:
            break
    return value


_LINEARITY_TRIALS = 3
_LINEARITY_TOL = 1e-8


def _check_linear(functionals: Sequence[CurveFunctional],
                  sample: FunctionalSample):
    rng = np.random.default_rng(20240917)
    shape = (sample.k, sample.d)
    for i, phi in enumerate(functionals):
        for _ in range(_LINEARITY_TRIALS):
            u = rng.standard_normal(shape)
            v = rng.standard_normal(shape)
            lhs = np.asarray(phi(u + v), dtype=float)
            rhs = np.asarray(phi(u), dtype=float) + np.asarray(phi(v),
                                                               dtype=float)
            scale = max(1.0, float(np.max(np.abs(rhs))))
            if lhs.shape != rhs.shape or np.max(
                    np.abs(lhs - rhs)) > _LINEARITY_TOL * scale:
                raise NonlinearFunctionalError(
                    f"functional #{i} is not additive on random inputs")


def phi_depth(z, sample: FunctionalSample,
              functionals: Sequence[CurveFunctional],
              base_depth: str = "halfspace",
              options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Minimum base depth over a finite family of linear curve functionals.

    Each functional maps a (k, d) curve-value array to a vector; all
    functionals must map to the same dimension.  Additivity is verified on
    random curve pairs before evaluation.
    """
    spec = _base_spec(base_depth)
    if len(functionals) == 0:
        raise ValueError("the family of functionals must be nonempty")
    zc = sample.coerce_curve(z)
    _check_linear(functionals, sample)
    value = 1.0
    for phi in functionals:
        q = np.asarray(phi(zc), dtype=float).reshape(-1)
        pts = np.array([np.asarray(phi(sample.curves[i]),
                                   dtype=float).reshape(-1)
                        for i in range(sample.n)])
        value = min(value, spec.evaluate(q, DataCloud(pts), options))
        if value == 0.0:
            break
    return value


def phi_maximality(z, sample: FunctionalSample,
                   functionals: Sequence[CurveFunctional],
                   base_depth: str = "halfspace",
                   options: EvalOptions = DEFAULT_OPTIONS,
                   tol: float = 1e-9) -> bool:
    """True iff every functional sends the query into the base depth's
    deepest (level 1) region, i.e. the minimum structure attains its bound."""
    spec = _base_spec(base_depth)
    if len(functionals) == 0:
        raise ValueError("the family of functionals must be nonempty")
    zc = sample.coerce_curve(z)
    _check_linear(functionals, sample)
    for phi in functionals:
        q = np.asarray(phi(zc), dtype=float).reshape(-1)
        pts = np.array([np.asarray(phi(sample.curves[i]),
                                   dtype=float).reshape(-1)
                        for i in range(sample.n)])
        if spec.evaluate(q, DataCloud(pts), options) < 1.0 - tol:
            return False
    return True


def evaluation_functionals(sample: FunctionalSample,
                           t_indices: Sequence[int] | None = None,
                           ) -> list[CurveFunctional]:
    """The point-evaluation maps x -> x(t) for the chosen grid positions;
    feeding them to ``phi_depth`` reproduces ``graph_depth``."""
    idx = _time_indices(sample, t_indices)

    def make(j: int) -> CurveFunctional:
        return lambda curve: np.asarray(curve, dtype=float)[j, :]

    return [make(int(j)) for j in idx]
