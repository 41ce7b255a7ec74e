from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from cli import reproduce_example, run
from cli.examples import pendulum_fit_target, pendulum_parameters
from cli.payloads import PendulumFixture, load_fixture
from fotf import evaluate
from shared.config import Config
from shared.errors import PayloadError


@pytest.fixture(scope="module")
def config() -> Config:
    return Config()


def test_margin_example_matches_reference(config: Config) -> None:
    rows = reproduce_example("2", config).report["margins"]
    assert [row["system"] for row in rows] == ["P", "P/Q_2", "P/Q_4"]
    for row in rows:
        assert row["phase_margin_deg"] == pytest.approx(
            row["reference_phase_margin_deg"], abs=0.5
        )
        assert row["gain_margin_db"] == pytest.approx(
            row["reference_gain_margin_db"], abs=0.1
        )


def test_internal_stability_example(config: Config) -> None:
    report = reproduce_example("internal-stability", config).report
    assert report["fractional_controller"]["verdict"] == "stable"
    assert report["cancelling_controller"]["verdict"] == "unstable"


def test_step_example_orderings(config: Config) -> None:
    bundle = reproduce_example("1", config)
    report = bundle.report
    assert report["undershoot_decreasing"]
    assert report["settling_increasing"]
    assert sorted(bundle.artifacts) == ["trace_1.csv", "trace_2.csv", "trace_3.csv"]

    plant = report["systems"]["P"]["metrics"]
    assert plant["r_us"] == pytest.approx(0.6875, abs=1e-5)
    assert plant["residual_at_horizon"] <= 0.02
    for system in report["systems"].values():
        metrics = system["metrics"]
        assert metrics["y_bar"] == pytest.approx(1.0)
        assert metrics["r_us"] >= 0.5 * metrics["undershoot_lower_bound"]
        assert not system["diverged"]


def test_pendulum_parameters() -> None:
    fixture = load_fixture("pendulum", PendulumFixture)
    p, z = pendulum_parameters(fixture)
    assert p == pytest.approx(np.sqrt(19.6))
    assert z == pytest.approx(np.sqrt(9.8))


def test_pendulum_target_factors() -> None:
    fixture = load_fixture("pendulum", PendulumFixture)
    p, z = pendulum_parameters(fixture)
    target = pendulum_fit_target(fixture)
    s = 1j
    root = np.sqrt(s)
    expected = (root - np.sqrt(z)) / (0.1 * (root - np.sqrt(p)) * (s + p))
    assert evaluate(target, s) == pytest.approx(expected, rel=1e-12)


def test_pendulum_fit_example(config: Config) -> None:
    report = reproduce_example("pendulum-fit", config).report
    fit = report["fit"]
    assert fit["max_mag_error_db"] <= 2.0
    assert fit["max_phase_error_deg"] <= 10.0
    assert report["augmentation_max_rel_error"] < 1e-9

    augmented = report["augmented"]
    assert augmented["den"][:2] == [0, 0]
    assert len(augmented["num"]) == len(fit["model"]["num"]) + 1

    canceller = report["canceller_fit"]
    assert canceller["max_mag_error_db"] <= 1.0
    assert canceller["max_phase_error_deg"] <= 5.0


def test_unknown_example(config: Config) -> None:
    with pytest.raises(PayloadError):
        reproduce_example("3", config)


def test_example_command_renders_summary(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    code = run(["example", "internal-stability", "--output-dir", str(tmp_path)])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert report["cancelling_controller"]["verdict"] == "unstable"
    assert "Internal stability" in captured.err
