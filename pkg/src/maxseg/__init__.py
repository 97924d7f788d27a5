"""maxseg: localize elevated-mean intervals and rectangles via maximum subarray."""

__version__ = "0.1.0"

from .core1d import (
    Interval,
    Solution,
    glr_statistic,
    max_subarray,
    max_subarray_constrained,
    max_subarray_penalized,
)
from .core2d import Rect, RectSolution, detect_regions, max_subrect_penalized
from .expfam import (
    Bernoulli,
    Gaussian,
    GammaFixedShape,
    ParamPair,
    Poisson,
    make_model,
    optimal_penalty,
    penalty_from_prior,
)
from .frontier import (
    BudgetResult,
    FrontierPoint,
    constrained_frontier,
    hull_check,
    penalized_frontier,
    solve_with_length_budget,
    upper_convex_hull,
)
from .rng import RNG_ALGORITHM, RngStream
from .simlab import (
    PlantedConfig,
    boundary_error_study,
    generate_planted,
    overlap,
    overlap_vs_delta,
    run_length_histogram,
)

__all__ = [
    "__version__",
    "Interval",
    "Solution",
    "max_subarray",
    "max_subarray_penalized",
    "max_subarray_constrained",
    "glr_statistic",
    "Rect",
    "RectSolution",
    "max_subrect_penalized",
    "detect_regions",
    "Gaussian",
    "Poisson",
    "GammaFixedShape",
    "Bernoulli",
    "ParamPair",
    "make_model",
    "optimal_penalty",
    "penalty_from_prior",
    "FrontierPoint",
    "BudgetResult",
    "constrained_frontier",
    "penalized_frontier",
    "upper_convex_hull",
    "solve_with_length_budget",
    "hull_check",
    "RngStream",
    "RNG_ALGORITHM",
    "PlantedConfig",
    "generate_planted",
    "overlap",
    "overlap_vs_delta",
    "run_length_histogram",
    "boundary_error_study",
]
