from __future__ import annotations

import pytest

from approx import RationalTf
from fotf import CancellerSpec, CommensurateTf, from_rational, make_canceller
from shared.config import FitConfig
from shared.errors import PoleEvaluationError
from timedomain import compute_metrics, simulate_step, step_of_fractional, to_state_space


def test_integer_order_plant_is_realized_exactly(step_plant: CommensurateTf) -> None:
    resp, metrics, report = step_of_fractional(step_plant, t_max=40.0, dt=1e-3, lam=1.0)
    assert report.residuals == []
    direct = simulate_step(
        to_state_space(RationalTf.from_coeffs([1.0, -1.0], [1.0, 5.0 / 6.0, 1.0 / 6.0])),
        40.0,
        1e-3,
    )
    assert metrics.r_us == pytest.approx(compute_metrics(direct, 1.0).r_us, abs=1e-6)
    assert metrics.r_us == pytest.approx(0.6875, abs=1e-5)
    assert resp.y[-1] == pytest.approx(1.0, abs=1e-6)


def test_rebased_plant_stays_exact(step_plant: CommensurateTf) -> None:
    _, metrics, report = step_of_fractional(step_plant.rebase(2), t_max=10.0, dt=1e-2)
    assert report.residuals == []
    assert report.model.den_degree == 2


def test_fractional_plant_keeps_exact_steady_state(
    step_family: list[CommensurateTf],
) -> None:
    cfg = FitConfig(num_order=6, den_order=6, n_points=300)
    _, metrics, report = step_of_fractional(step_family[1], cfg, t_max=5.0, dt=1e-2)
    assert metrics.y_bar == 1.0
    assert len(report.residuals) == cfg.sk_iterations + 1
    assert report.model.is_proper


def test_improper_fit_is_retried() -> None:
    canceller = make_canceller(CancellerSpec(1.0, 2))
    cfg = FitConfig(num_order=2, den_order=1, sk_iterations=2)
    resp, metrics, report = step_of_fractional(canceller, cfg, t_max=1.0, dt=1e-2)
    assert report.model.is_proper
    assert report.model.num_degree <= 1
    assert metrics.y_bar == 1.0
    assert not resp.diverged


def test_pole_at_origin() -> None:
    with pytest.raises(PoleEvaluationError):
        step_of_fractional(from_rational([1.0], [0.0, 1.0]), t_max=1.0, dt=1e-2)
