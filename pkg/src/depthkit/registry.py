"""Named registry of depth functions and their capabilities.

Each entry knows how to evaluate one point or a batch, whether an exact
central-region algorithm exists, which invariance class the depth satisfies,
whether its maximum reaches 1 on samples (a prerequisite for depth lifts),
and whether it is admissible as the building block of the functional depths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import combinatorial, metric, weighted
from .cloud import DataCloud
from .errors import UnknownDepthError
from .geometry import ConvexRegion


@dataclass(frozen=True)
class EvalOptions:
    seed: int = 0
    budget: int = 1000

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("direction budget must be at least 1")


DEFAULT_OPTIONS = EvalOptions()

PointEval = Callable[[np.ndarray, DataCloud, EvalOptions], float]
BatchEval = Callable[[np.ndarray, DataCloud, EvalOptions], np.ndarray]
RegionFn = Callable[[DataCloud, float], ConvexRegion]


@dataclass(frozen=True)
class DepthSpec:
    name: str
    variant: str  # declared invariance class: "affine" | "isometric" | "scale"
    evaluate_point: PointEval
    evaluate_batch: BatchEval
    region_fn: RegionFn | None = None
    convex_regions: bool = True
    lift_ready: bool = False
    functional_base: bool = False
    uses_directions: bool = False

    def evaluate(self, z, cloud: DataCloud, options: EvalOptions = DEFAULT_OPTIONS) -> float:
        return self.evaluate_point(np.asarray(z, dtype=float), cloud, options)

    def evaluate_many(self, zs, cloud: DataCloud,
                      options: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
        return self.evaluate_batch(np.asarray(zs, dtype=float), cloud, options)

    def evaluator(self, options: EvalOptions = DEFAULT_OPTIONS):
        """Bindable (point, cloud) callable, e.g. for the postulate harness."""

        def call(z, cloud: DataCloud) -> float:
            return self.evaluate_point(np.asarray(z, dtype=float), cloud, options)

        return call


_REGISTRY: dict[str, DepthSpec] = {}

_ALIASES = {
    "tukey": "halfspace",
    "location": "halfspace",
    "ech*": "echstar",
    "l2affine": "l2-affine",
    "affine-l2": "l2-affine",
}


def register(spec: DepthSpec) -> DepthSpec:
    _REGISTRY[spec.name] = spec
    return spec


def available_depths() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def get_depth(name: str) -> DepthSpec:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _REGISTRY:
        raise UnknownDepthError(
            f"unknown depth {name!r}; available: {', '.join(available_depths())}"
        )
    return _REGISTRY[key]


def _loop_batch(point_eval: PointEval) -> BatchEval:
    def batch(zs: np.ndarray, cloud: DataCloud, options: EvalOptions) -> np.ndarray:
        zs = zs.reshape(-1, cloud.d)
        return np.array([point_eval(z, cloud, options) for z in zs])

    return batch


def _wm_region(scheme: weighted.WeightScheme) -> RegionFn:
    def region(cloud: DataCloud, alpha: float) -> ConvexRegion:
        return weighted.wm_region(cloud, scheme, alpha)

    return region


def _wm_point(scheme: weighted.WeightScheme) -> PointEval:
    def point(z: np.ndarray, cloud: DataCloud, options: EvalOptions) -> float:
        return weighted.wm_depth(z, cloud, scheme)

    return point


register(DepthSpec(
    name="l2",
    variant="isometric",
    evaluate_point=lambda z, cloud, opts: metric.l2_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: metric.l2_depth_many(zs.reshape(-1, cloud.d), cloud),
    functional_base=True,
))

register(DepthSpec(
    name="l2-affine",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: metric.affine_invariant_l2_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: metric.affine_invariant_l2_depth_many(
        zs.reshape(-1, cloud.d), cloud),
    functional_base=True,
))

register(DepthSpec(
    name="mahalanobis",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: metric.mahalanobis_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: metric.mahalanobis_depth_many(
        zs.reshape(-1, cloud.d), cloud),
    region_fn=metric.mahalanobis_region,
    lift_ready=True,
    functional_base=True,
))

register(DepthSpec(
    name="projection",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: metric.projection_depth(
        z, cloud, direction_budget=opts.budget, seed=opts.seed),
    evaluate_batch=lambda zs, cloud, opts: metric.projection_depth_many(
        zs.reshape(-1, cloud.d), cloud, direction_budget=opts.budget, seed=opts.seed),
    functional_base=True,
    uses_directions=True,
))

register(DepthSpec(
    name="oja",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: metric.oja_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: metric.oja_depth_many(zs.reshape(-1, cloud.d), cloud),
    functional_base=True,
))

register(DepthSpec(
    name="zonoid",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: weighted.zonoid_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: weighted.zonoid_depth_many(
        zs.reshape(-1, cloud.d), cloud),
    region_fn=_wm_region(weighted.ZONOID),
    lift_ready=True,
    functional_base=True,
))

register(DepthSpec(
    name="echstar",
    variant="affine",
    evaluate_point=_wm_point(weighted.ECH_STAR),
    evaluate_batch=_loop_batch(_wm_point(weighted.ECH_STAR)),
    region_fn=_wm_region(weighted.ECH_STAR),
    lift_ready=True,
    functional_base=True,
))

register(DepthSpec(
    name="geometric",
    variant="affine",
    evaluate_point=_wm_point(weighted.GEOMETRIC),
    evaluate_batch=_loop_batch(_wm_point(weighted.GEOMETRIC)),
    region_fn=_wm_region(weighted.GEOMETRIC),
    lift_ready=True,
    functional_base=True,
))

register(DepthSpec(
    name="halfspace",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: combinatorial.halfspace_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: combinatorial.halfspace_depth_many(zs, cloud),
    region_fn=combinatorial.halfspace_region,
    functional_base=True,
))

register(DepthSpec(
    name="simplicial",
    variant="affine",
    evaluate_point=lambda z, cloud, opts: combinatorial.simplicial_depth(z, cloud),
    evaluate_batch=lambda zs, cloud, opts: (
        combinatorial.simplicial_depth_many(zs, cloud) if cloud.d == 2
        else _loop_batch(lambda z, c, o: combinatorial.simplicial_depth(z, c))(zs, cloud, opts)
    ),
    convex_regions=False,
    functional_base=True,
))

register(DepthSpec(
    name="random-tukey",
    variant="scale",
    evaluate_point=lambda z, cloud, opts: combinatorial.random_tukey_depth(
        z, cloud, combinatorial.DirectionBudget(opts.budget, opts.seed)),
    evaluate_batch=_loop_batch(lambda z, cloud, opts: combinatorial.random_tukey_depth(
        z, cloud, combinatorial.DirectionBudget(opts.budget, opts.seed))),
    uses_directions=True,
))
