from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from shared.config import (
    Config,
    ConfigAlgebra,
    ConfigGrid,
    ConfigSimulation,
    FitConfig,
    load_validated_config,
)
from utils.constants import DEFAULT_MAX_PHASE_STEP_DEG

SAMPLE = Path(__file__).parents[1] / "config.sample.json"


def test_defaults() -> None:
    config = Config()
    assert config.log.level == "WARNING"
    assert config.algebra.degree_cap == 4096
    assert (config.grid.omega_min, config.grid.omega_max) == (1e-3, 1e3)
    assert config.grid.n_points == 1000
    assert (config.fit.num_order, config.fit.den_order) == (8, 8)
    assert config.fit.n_points == 500
    assert config.fit.sk_iterations == 10
    assert config.fit.refine
    assert (config.simulation.t_max, config.simulation.dt) == (40.0, 1e-3)
    assert config.simulation.settling_band == 0.02
    assert config.margins.max_phase_step_deg == DEFAULT_MAX_PHASE_STEP_DEG == 45.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"omega_min": 0.0},
        {"omega_min": 10.0, "omega_max": 1.0},
        {"n_points": 1},
    ],
)
def test_invalid_grid(kwargs: dict[str, float]) -> None:
    with pytest.raises(ValidationError):
        ConfigGrid(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"num_order": -1},
        {"den_order": 0},
        {"sk_iterations": -1},
        {"n_points": 8, "num_order": 4, "den_order": 4},
        {"n_points": 3, "num_order": 1, "den_order": 1, "weights": [1.0, 1.0]},
        {"n_points": 3, "num_order": 1, "den_order": 1, "weights": [1.0, 0.0, 1.0]},
        {"omega_min": 1.0, "omega_max": 1.0},
    ],
)
def test_invalid_fit(kwargs: dict[str, object]) -> None:
    with pytest.raises(ValidationError):
        FitConfig(**kwargs)


def test_fit_grid_and_weights() -> None:
    cfg = FitConfig(omega_min=0.1, omega_max=10.0, n_points=3, num_order=1, den_order=1)
    np.testing.assert_allclose(cfg.omega(), [0.1, 1.0, 10.0])
    np.testing.assert_array_equal(cfg.weight_vector(), [1.0, 1.0, 1.0])
    weighted = cfg.model_copy(update={"weights": [1.0, 2.0, 3.0]})
    np.testing.assert_array_equal(weighted.weight_vector(), [1.0, 2.0, 3.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"dt": 0.0},
        {"dt": 1.0, "t_max": 5.0},
        {"settling_band": 0.0},
        {"settling_band": 1.0},
    ],
)
def test_invalid_simulation(kwargs: dict[str, float]) -> None:
    with pytest.raises(ValidationError):
        ConfigSimulation(**kwargs)


def test_invalid_cap() -> None:
    with pytest.raises(ValidationError):
        ConfigAlgebra(degree_cap=1)


def test_invalid_log_level() -> None:
    with pytest.raises(ValidationError):
        Config.model_validate({"log": {"level": "VERBOSE"}})


def test_load_defaults_without_path() -> None:
    assert load_validated_config() == Config()


def test_load_partial_file(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"grid": {"n_points": 50}, "simulation": {"t_max": 5.0}}))
    config = load_validated_config(str(path))
    assert config.grid.n_points == 50
    assert config.grid.omega_max == 1e3
    assert config.simulation.t_max == 5.0


def test_load_invalid_file(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"simulation": {"dt": -1.0}}))
    with pytest.raises(ValidationError):
        load_validated_config(str(path))


def test_load_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        load_validated_config(str(tmp_path / "absent.json"))


def test_sample_config_is_valid() -> None:
    config = load_validated_config(str(SAMPLE))
    assert config == Config.model_validate(json.loads(SAMPLE.read_text()))
