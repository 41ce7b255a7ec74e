from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from fotf.transfer import CommensurateTf, evaluate_many
from shared.config import ConfigGrid
from shared.errors import DomainError
from utils.logging import log
from utils.serialization import write_csv

BODE_HEADER = ("omega_rad_s", "mag_db", "phase_deg")


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Sampling frequencies in rad/s, strictly increasing, positive, >= 2 points"""

    omega: np.ndarray

    def __post_init__(self: FrequencyGrid) -> None:
        omega = np.asarray(self.omega, dtype=float).ravel()
        if omega.size < 2:
            raise DomainError("frequency grid needs at least two points")
        if not np.all(np.isfinite(omega)) or np.any(omega <= 0):
            raise DomainError("frequency grid entries must be positive and finite")
        if np.any(np.diff(omega) <= 0):
            raise DomainError("frequency grid must be strictly increasing")
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

    @classmethod
    def logspace(
        cls: type[FrequencyGrid], omega_min: float, omega_max: float, n_points: int
    ) -> FrequencyGrid:
        """Log-spaced grid over [omega_min, omega_max]"""
        if not 0 < omega_min < omega_max:
            raise DomainError("grid requires 0 < omega_min < omega_max")
        return cls(np.logspace(np.log10(omega_min), np.log10(omega_max), n_points))

    @classmethod
    def from_config(
        cls: type[FrequencyGrid], config: Optional[ConfigGrid] = None
    ) -> FrequencyGrid:
        """Grid from config[grid]; 1000 points over [1e-3, 1e3] rad/s by default"""
        config = config or ConfigGrid()
        return cls.logspace(config.omega_min, config.omega_max, config.n_points)


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Sampled complex response with derived Bode data

    Attributes:
        omega (np.ndarray): Frequencies (rad/s)
        value (np.ndarray): Complex response, NaN at pole-hit samples
        mag_db (np.ndarray): 20 log10 |value|
        phase_deg (np.ndarray): Unwrapped phase in degrees, seeded from the
            lowest-frequency valid sample's principal phase
        pole_hit (np.ndarray): True where the grid landed exactly on a pole
    """

    omega: np.ndarray
    value: np.ndarray
    mag_db: np.ndarray
    phase_deg: np.ndarray
    pole_hit: np.ndarray

    @classmethod
    def from_values(
        cls: type[FrequencyResponse],
        omega: np.ndarray,
        value: np.ndarray,
        pole_hit: Optional[np.ndarray] = None,
    ) -> FrequencyResponse:
        """Derive magnitude and unwrapped phase from complex samples.

        Phase is unwrapped by adding +/-360 deg whenever adjacent valid samples
        jump by more than 180 deg. Flagged samples carry NaN and are skipped.
        """
        omega = np.asarray(omega, dtype=float)
        value = np.asarray(value, dtype=complex)
        if pole_hit is None:
            pole_hit = ~np.isfinite(value)
        valid = ~pole_hit

        with np.errstate(divide="ignore"):
            mag_db = np.where(valid, 20.0 * np.log10(np.abs(value)), np.nan)
        phase_deg = np.full(omega.shape, np.nan)
        phase_deg[valid] = np.degrees(np.unwrap(np.angle(value[valid])))

        return cls(omega, value, mag_db, phase_deg, np.asarray(pole_hit, dtype=bool))

    @property
    def flagged(self: FrequencyResponse) -> bool:
        return bool(np.any(self.pole_hit))

    def to_csv(self: FrequencyResponse) -> str:
        """Bode CSV: omega_rad_s,mag_db,phase_deg, one row per grid point"""
        return write_csv(BODE_HEADER, (self.omega, self.mag_db, self.phase_deg))


def frequency_response(tf: CommensurateTf, grid: FrequencyGrid) -> FrequencyResponse:
    """Sample tf(j omega) on the grid.

    Args:
        tf (CommensurateTf): Transfer function
        grid (FrequencyGrid): Frequencies (rad/s)

    Returns:
        FrequencyResponse: Per-point values, magnitude and unwrapped phase. A pole
            exactly on the grid flags that sample instead of failing.
    """
    value, poles = evaluate_many(tf, 1j * grid.omega)
    if np.any(poles):
        log.warning(
            "Grid hits a pole, samples flagged",
            count=int(np.count_nonzero(poles)),
            omega=float(grid.omega[poles][0]),
        )
    return FrequencyResponse.from_values(grid.omega, value, poles)
