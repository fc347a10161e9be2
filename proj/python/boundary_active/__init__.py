from ._core import (
    AdaptiveResult,
    BudgetExhausted,
    Instance,
    LabeledRegions,
    ThresholdEstimate,
    adaptive,
    correctness_margin,
    derive_seed,
    fit_rate,
    line_search,
    run_cell,
    sample_complexity_bound,
    subroutine,
    theoretical_exponent,
)

__all__ = [
    "AdaptiveResult",
    "BudgetExhausted",
    "Instance",
    "LabeledRegions",
    "ThresholdEstimate",
    "adaptive",
    "correctness_margin",
    "derive_seed",
    "fit_rate",
    "line_search",
    "run_cell",
    "sample_complexity_bound",
    "subroutine",
    "theoretical_exponent",
]
