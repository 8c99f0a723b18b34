"""depthkit: data depth statistics for point clouds and sampled curves.

Depth functions measure how central a point is within a data cloud; their
upper level sets form nested central regions.  The package provides exact
and approximate depths (distance-based, weighted-mean, combinatorial),
central-region algorithms, depth lifts with a dispersion preorder and
semi-metric, functional depths for curves, an invariance test harness,
and a command-line interface.
"""

from __future__ import annotations

from .cloud import DataCloud
from .core import (
    CheckResult,
    PostulateReport,
    check_postulates,
    clamp_depth,
    depth_from_outlyingness,
    depth_from_regions,
    outlyingness,
)
from .combinatorial import (
    DirectionBudget,
    halfspace_depth,
    halfspace_region,
    random_tukey_depth,
    simplicial_depth,
    tukey_region_2d,
)
from .errors import (
    DatasetIOError,
    DatasetParseError,
    DepthKitError,
    DimensionMismatchError,
    EmptyDatasetError,
    EmptyRegionError,
    EmptyTimeSetError,
    EnumerationTooLargeError,
    GridMismatchError,
    InvalidAlphaError,
    NestingViolationError,
    NonlinearFunctionalError,
    SingularScatterError,
    UnknownDepthError,
    UnsupportedLiftError,
    ZeroMadError,
)
from .functional import (
    FunctionalSample,
    evaluation_functionals,
    graph_depth,
    grid_depth,
    phi_depth,
    phi_maximality,
)
from .geometry import ConvexRegion, convex_hull
from .metric import (
    MOMENT,
    ScatterEstimator,
    affine_invariant_l2_depth,
    l2_depth,
    mahalanobis_depth,
    mahalanobis_region,
    oja_depth,
    projection_depth,
)
from .dataio import Dataset, load_curves, load_dataset, write_dataset
from .datasets import eu27
from .registry import (
    DEFAULT_OPTIONS,
    DepthSpec,
    EvalOptions,
    available_depths,
    get_depth,
)
from .regions import (
    DEFAULT_ALPHA_GRID,
    DepthLift,
    RegionContour,
    Ring,
    central_region,
    depth_lift,
    depth_order_leq,
    depth_semimetric,
    hausdorff_distance,
    marching_squares,
    region_contour,
    region_contours,
)
from .weighted import (
    ECH_STAR,
    GEOMETRIC,
    ZONOID,
    WeightScheme,
    validate_weight_scheme,
    weights,
    wm_depth,
    wm_region,
    wm_support_function,
    zonoid_depth,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "ConvexRegion",
    "DataCloud",
    "Dataset",
    "DatasetIOError",
    "DatasetParseError",
    "DEFAULT_ALPHA_GRID",
    "DEFAULT_OPTIONS",
    "DepthKitError",
    "DepthLift",
    "DepthSpec",
    "DimensionMismatchError",
    "DirectionBudget",
    "ECH_STAR",
    "EmptyDatasetError",
    "EmptyRegionError",
    "EmptyTimeSetError",
    "EnumerationTooLargeError",
    "EvalOptions",
    "FunctionalSample",
    "GEOMETRIC",
    "GridMismatchError",
    "InvalidAlphaError",
    "MOMENT",
    "NestingViolationError",
    "NonlinearFunctionalError",
    "PostulateReport",
    "RegionContour",
    "Ring",
    "ScatterEstimator",
    "SingularScatterError",
    "UnknownDepthError",
    "UnsupportedLiftError",
    "WeightScheme",
    "ZONOID",
    "ZeroMadError",
    "affine_invariant_l2_depth",
    "available_depths",
    "central_region",
    "check_postulates",
    "clamp_depth",
    "convex_hull",
    "depth_from_outlyingness",
    "depth_from_regions",
    "depth_lift",
    "depth_order_leq",
    "depth_semimetric",
    "eu27",
    "evaluation_functionals",
    "get_depth",
    "graph_depth",
    "grid_depth",
    "halfspace_depth",
    "halfspace_region",
    "hausdorff_distance",
    "l2_depth",
    "load_curves",
    "load_dataset",
    "mahalanobis_depth",
    "mahalanobis_region",
    "marching_squares",
    "oja_depth",
    "outlyingness",
    "phi_depth",
    "phi_maximality",
    "projection_depth",
    "random_tukey_depth",
    "region_contour",
    "region_contours",
    "simplicial_depth",
    "tukey_region_2d",
    "validate_weight_scheme",
    "weights",
    "wm_depth",
    "wm_region",
    "wm_support_function",
    "write_dataset",
    "zonoid_depth",
]
