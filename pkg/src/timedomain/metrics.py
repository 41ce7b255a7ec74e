from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from scipy.integrate import trapezoid

from shared.errors import DomainError
from utils.constants import DEFAULT_SETTLING_BAND
from utils.logging import log

from .statespace import StepResponse


@dataclass(frozen=True)
class StepMetrics:
    """Undershoot, overshoot and settling of a step response

    Attributes:
        y_bar (float): Steady-state value (exact DC gain)
        r_us (float): Relative undershoot, max(0, -min y / y_bar)
        r_us_unclamped (float): -min y / y_bar
        r_os (float): Relative overshoot, max(0, max y / y_bar - 1)
        settling_time_s (Optional[float]): Time after which the trace stays inside
            the band; None when it leaves the band at the horizon
        settled (bool): True when settling_time_s is known
        residual_at_horizon (float): |y(t_max) - y_bar| / |y_bar|
        undershoot_lower_bound (Optional[float]): 1 / (e^(lambda T) - 1) when a
            zero location was given; T = t_max for unsettled traces
    """

    y_bar: float
    r_us: float
    r_us_unclamped: float
    r_os: float
    settling_time_s: Optional[float]
    settled: bool
    residual_at_horizon: float
    undershoot_lower_bound: Optional[float] = None

    @property
    def settling_rank_key(self: StepMetrics) -> tuple[int, float]:
        """Total order on settling: every settled trace before any unsettled one,
        then by settling time or by distance from steady state at the horizon"""
        if self.settled and self.settling_time_s is not None:
            return (0, self.settling_time_s)
        return (1, self.residual_at_horizon)

    def to_dict(self: StepMetrics) -> dict[str, Any]:
        return {
            "y_bar": self.y_bar,
            "r_us": self.r_us,
            "r_us_unclamped": self.r_us_unclamped,
            "r_os": self.r_os,
            "settling_time_s": self.settling_time_s,
            "settled": self.settled,
            "residual_at_horizon": self.residual_at_horizon,
            "undershoot_lower_bound": self.undershoot_lower_bound,
            "settling_rank_key": list(self.settling_rank_key),
        }


def undershoot_lower_bound(lam: float, settling_time: float) -> float:
    """1 / (e^(lambda T) - 1); +inf at T = 0"""
    if lam <= 0:
        raise DomainError(f"zero location must be positive, got {lam}")
    if settling_time <= 0:
        return math.inf
    return 1.0 / math.expm1(lam * settling_time)


def _settling_time(
    resp: StepResponse, y_bar: float, band: float
) -> Optional[float]:
    outside = np.abs(resp.y - y_bar) > band * abs(y_bar)
    if not np.any(outside):
        return 0.0
    last = int(np.flatnonzero(outside)[-1])
    if last == len(resp.y) - 1:
        return None
    return float(resp.t[last + 1])


def compute_metrics(
    resp: StepResponse,
    y_bar: float,
    lam: Optional[float] = None,
    band: float = DEFAULT_SETTLING_BAND,
) -> StepMetrics:
    """Relative undershoot / overshoot and band settling time of a step trace.

    Args:
        resp (StepResponse): Simulated trace
        y_bar (float): Steady-state value, non-zero
        lam (Optional[float]): Real non-minimum phase zero; enables the bound
        band (float): Relative settling band

    Returns:
        StepMetrics: Metrics of the trace

    Raises:
        DomainError: If y_bar is zero or the trace is empty
    """
    if y_bar == 0 or not math.isfinite(y_bar):
        raise DomainError(f"relative metrics need a finite non-zero y_bar, got {y_bar}")
    if resp.y.size == 0:
        raise DomainError("empty step response")

    ratio = resp.y / y_bar
    r_us_unclamped = float(-np.min(ratio))
    r_os = max(0.0, float(np.max(ratio)) - 1.0)

    settling = _settling_time(resp, y_bar, band)
    settled = settling is not None
    residual = float(abs(resp.y[-1] - y_bar) / abs(y_bar))
    if not settled:
        log.warning(
            "Step response has not settled within the horizon",
            t_max=float(resp.t[-1]),
            residual=residual,
        )

    bound = None
    if lam is not None:
        horizon = settling if settling is not None else float(resp.t[-1])
        bound = undershoot_lower_bound(lam, horizon)

    return StepMetrics(
        y_bar=float(y_bar),
        r_us=max(0.0, r_us_unclamped),
        r_us_unclamped=r_us_unclamped,
        r_os=r_os,
        settling_time_s=settling,
        settled=settled,
        residual_at_horizon=residual,
        undershoot_lower_bound=bound,
    )


def zero_integral(resp: StepResponse, lam: float) -> tuple[float, float]:
    """Trapezoidal integrals of y e^(-lambda t) and |y| e^(-lambda t) over the trace

    For a system with a zero at s = lambda the first vanishes as t_max grows; the
    second sets its scale.
    """
    decay = np.exp(-lam * resp.t)
    signed = trapezoid(resp.y * decay, resp.t)
    absolute = trapezoid(np.abs(resp.y) * decay, resp.t)
    return float(signed), float(absolute)
