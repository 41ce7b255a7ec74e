from __future__ import annotations

import numpy as np
import pytest

from analysis import FrequencyGrid, FrequencyResponse, frequency_response
from fotf import CommensurateTf, cancel_zero
from shared.config import ConfigGrid
from shared.errors import DomainError


@pytest.mark.parametrize(
    "omega",
    [[1.0], [1.0, 1.0], [2.0, 1.0], [0.0, 1.0], [-1.0, 1.0], [1.0, np.inf]],
)
def test_invalid_grid(omega: list[float]) -> None:
    with pytest.raises(DomainError):
        FrequencyGrid(np.array(omega))


def test_logspace_bounds() -> None:
    with pytest.raises(DomainError):
        FrequencyGrid.logspace(10.0, 1.0, 10)
    grid = FrequencyGrid.logspace(1e-2, 1e2, 5)
    np.testing.assert_allclose(grid.omega, [1e-2, 1e-1, 1.0, 1e1, 1e2])


def test_default_grid() -> None:
    grid = FrequencyGrid.from_config()
    assert grid.omega.size == 1000
    assert grid.omega[0] == pytest.approx(1e-3)
    assert grid.omega[-1] == pytest.approx(1e3)


def test_grid_from_config() -> None:
    config = ConfigGrid(omega_min=0.1, omega_max=10.0, n_points=3)
    grid = FrequencyGrid.from_config(config)
    np.testing.assert_allclose(grid.omega, [0.1, 1.0, 10.0])


def test_half_order_zero_at_unit_frequency() -> None:
    tf = CommensurateTf.from_coeffs(2, [1.0, -1.0], [1.0])
    resp = frequency_response(tf, FrequencyGrid(np.array([1.0, 2.0])))
    assert resp.value[0] == pytest.approx(0.29289 - 0.70711j, abs=1e-5)
    assert resp.mag_db[0] == pytest.approx(-2.3226, abs=2e-3)
    assert resp.phase_deg[0] == pytest.approx(-67.5, abs=1e-9)


def test_identity_is_flat() -> None:
    resp = frequency_response(CommensurateTf.one(4), FrequencyGrid.from_config())
    assert np.all(resp.mag_db == 0.0)
    assert np.all(resp.phase_deg == 0.0)
    assert not resp.flagged


def test_dc_gain_shows_at_low_frequency(margin_plant: CommensurateTf) -> None:
    resp = frequency_response(margin_plant, FrequencyGrid.from_config())
    assert resp.mag_db[0] == pytest.approx(20.0, abs=1e-2)


def test_phase_is_unwrapped(margin_plant: CommensurateTf) -> None:
    for tf in (margin_plant, cancel_zero(margin_plant, 1.0, 4)):
        resp = frequency_response(tf, FrequencyGrid.from_config())
        assert np.all(np.abs(np.diff(resp.phase_deg)) < 180.0)


def test_integer_plant_phase_passes_minus_180(margin_plant: CommensurateTf) -> None:
    resp = frequency_response(margin_plant, FrequencyGrid.from_config())
    assert resp.phase_deg[-1] == pytest.approx(-270.0, abs=1.0)


def test_flagged_samples_are_skipped() -> None:
    omega = np.array([1.0, 2.0, 3.0])
    value = np.array([1.0 + 0j, np.nan, -1j])
    resp = FrequencyResponse.from_values(omega, value)
    assert resp.flagged
    assert resp.pole_hit.tolist() == [False, True, False]
    assert np.isnan(resp.mag_db[1]) and np.isnan(resp.phase_deg[1])
    assert resp.phase_deg[2] == pytest.approx(-90.0)


def test_bode_csv() -> None:
    resp = frequency_response(
        CommensurateTf.one(), FrequencyGrid.logspace(0.1, 10.0, 4)
    )
    lines = resp.to_csv().splitlines()
    assert lines[0] == "omega_rad_s,mag_db,phase_deg"
    assert len(lines) == 5
