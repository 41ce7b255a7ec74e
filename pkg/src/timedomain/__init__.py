from .metrics import StepMetrics, compute_metrics, undershoot_lower_bound, zero_integral
from .pipeline import step_of_fractional
from .statespace import StateSpace, StepResponse, simulate_step, to_state_space

__all__ = [
    "StateSpace",
    "StepMetrics",
    "StepResponse",
    "compute_metrics",
    "simulate_step",
    "step_of_fractional",
    "to_state_space",
    "undershoot_lower_bound",
    "zero_integral",
]
