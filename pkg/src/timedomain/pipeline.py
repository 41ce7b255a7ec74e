from __future__ import annotations

from typing import Optional

from approx.fit import FitReport, exact_report, fit_rational, fractional_response_of
from approx.rational import RationalTf
from fotf.transfer import CommensurateTf, evaluate
from shared.config import FitConfig
from shared.errors import DomainError
from utils.constants import DEFAULT_SETTLING_BAND, DEFAULT_SIM_DT, DEFAULT_SIM_T_MAX
from utils.logging import log

from .metrics import StepMetrics, compute_metrics
from .statespace import StepResponse, simulate_step, to_state_space


def _realize(tf: CommensurateTf, cfg: FitConfig) -> FitReport:
    target = fractional_response_of(tf, cfg)
    if tf.is_rational:
        # Integer-order input: realize exactly, a fit would be over-parameterised
        return exact_report(RationalTf.from_commensurate(tf), target)

    report = fit_rational(target, cfg)
    if report.model.is_proper:
        return report

    log.info(
        "Fitted model is improper, retrying with a lower numerator order",
        num_order=cfg.num_order,
    )
    retry = cfg.model_copy(update={"num_order": cfg.num_order - 1})
    report = fit_rational(target, retry)
    if not report.model.is_proper:
        raise DomainError(
            f"fit remains improper at orders {retry.num_order}/{retry.den_order}"
        )
    return report


def step_of_fractional(
    tf: CommensurateTf,
    cfg: Optional[FitConfig] = None,
    t_max: float = DEFAULT_SIM_T_MAX,
    dt: float = DEFAULT_SIM_DT,
    lam: Optional[float] = None,
    band: float = DEFAULT_SETTLING_BAND,
) -> tuple[StepResponse, StepMetrics, FitReport]:
    """Step response of a fractional transfer function through a rational fit.

    Args:
        tf (CommensurateTf): Transfer function to simulate
        cfg (Optional[FitConfig]): Fit request; defaults when omitted
        t_max (float): Horizon (s)
        dt (float): Step (s)
        lam (Optional[float]): Non-minimum phase zero for the undershoot bound
        band (float): Relative settling band

    Returns:
        tuple[StepResponse, StepMetrics, FitReport]: trace, metrics against the
            exact fractional DC gain, and the realization report

    Raises:
        DomainError: If the fit stays improper after one retry
        PoleEvaluationError: If tf has a pole at s = 0
    """
    cfg = cfg or FitConfig()
    y_bar = evaluate(tf, 0.0).real
    report = _realize(tf, cfg)
    resp = simulate_step(to_state_space(report.model), t_max, dt)
    metrics = compute_metrics(resp, y_bar, lam, band)
    log.debug(
        "Simulated step",
        base_v=tf.base_v,
        r_us=metrics.r_us,
        settled=metrics.settled,
    )
    return resp, metrics, report
