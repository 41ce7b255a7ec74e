from __future__ import annotations

import json
from typing import Literal, Optional

import numpy as np
import structlog
from pydantic import BaseModel, model_validator

from utils.constants import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_FIT_OMEGA_MAX,
    DEFAULT_FIT_OMEGA_MIN,
    DEFAULT_FIT_ORDER,
    DEFAULT_FIT_POINTS,
    DEFAULT_GRID_OMEGA_MAX,
    DEFAULT_GRID_OMEGA_MIN,
    DEFAULT_GRID_POINTS,
    DEFAULT_MAX_PHASE_STEP_DEG,
    DEFAULT_SETTLING_BAND,
    DEFAULT_SIM_DT,
    DEFAULT_SIM_T_MAX,
    DEFAULT_SK_ITERATIONS,
)

log = structlog.get_logger(__name__)

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class ConfigLog(BaseModel):
    """Expected config[log] format"""

    level: LogLevel = "WARNING"
    path: Optional[str] = None
    max_file_size: int = 2**30  # 1GB
    backup_count: int = 2


class ConfigAlgebra(BaseModel):
    """Expected config[algebra] format"""

    degree_cap: int = DEFAULT_DEGREE_CAP

    @model_validator(mode="after")
    def check_cap(self: ConfigAlgebra) -> ConfigAlgebra:
        """Cap must leave room for at least a first-order polynomial"""
        if self.degree_cap < 2:
            raise ValueError("degree_cap must be at least 2")
        return self


class ConfigGrid(BaseModel):
    """Expected config[grid] format (analysis frequency grid)"""

    omega_min: float = DEFAULT_GRID_OMEGA_MIN
    omega_max: float = DEFAULT_GRID_OMEGA_MAX
    n_points: int = DEFAULT_GRID_POINTS

    @model_validator(mode="after")
    def check_band(self: ConfigGrid) -> ConfigGrid:
        """Band must be positive and ordered, with at least two samples"""
        if not 0 < self.omega_min < self.omega_max:
            raise ValueError("grid requires 0 < omega_min < omega_max")
        if self.n_points < 2:
            raise ValueError("grid requires n_points >= 2")
        return self


class FitConfig(BaseModel):
    """Expected config[fit] format, also the request of a single rational fit

    Orders are polynomial degrees: `num_order` nb gives nb + 1 numerator
    coefficients, `den_order` na gives a monic denominator of degree na.
    `refine` polishes the linear solution by nonlinear output-error least squares.
    """

    omega_min: float = DEFAULT_FIT_OMEGA_MIN
    omega_max: float = DEFAULT_FIT_OMEGA_MAX
    n_points: int = DEFAULT_FIT_POINTS
    num_order: int = DEFAULT_FIT_ORDER
    den_order: int = DEFAULT_FIT_ORDER
    weights: Optional[list[float]] = None
    sk_iterations: int = DEFAULT_SK_ITERATIONS
    refine: bool = True

    @model_validator(mode="after")
    def check_fit(self: FitConfig) -> FitConfig:
        """Validate band, orders, weights and iteration count."""
        if not 0 < self.omega_min < self.omega_max:
            raise ValueError("fit requires 0 < omega_min < omega_max")
        if self.num_order < 0:
            raise ValueError("num_order must be >= 0")
        if self.den_order < 1:
            raise ValueError("den_order must be >= 1")
        if self.sk_iterations < 0:
            raise ValueError("sk_iterations must be >= 0")
        if self.n_points < self.num_order + self.den_order + 1:
            raise ValueError(
                "n_points must be at least num_order + den_order + 1, got "
                f"{self.n_points} for orders {self.num_order}/{self.den_order}"
            )
        if self.weights is not None:
            if len(self.weights) != self.n_points:
                raise ValueError("weights must have exactly n_points entries")
            if not all(w > 0 and np.isfinite(w) for w in self.weights):
                raise ValueError("weights must be positive and finite")
        return self

    def omega(self: FitConfig) -> np.ndarray:
        """Log-spaced fit grid in rad/s"""
        return np.logspace(
            np.log10(self.omega_min), np.log10(self.omega_max), self.n_points
        )

    def weight_vector(self: FitConfig) -> np.ndarray:
        """Per-point weights, all ones when not configured"""
        if self.weights is None:
            return np.ones(self.n_points)
        return np.asarray(self.weights, dtype=float)


class ConfigSimulation(BaseModel):
    """Expected config[simulation] format"""

    t_max: float = DEFAULT_SIM_T_MAX
    dt: float = DEFAULT_SIM_DT
    settling_band: float = DEFAULT_SETTLING_BAND

    @model_validator(mode="after")
    def check_horizon(self: ConfigSimulation) -> ConfigSimulation:
        """Step must be positive and the horizon long enough to be useful"""
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_max < 10 * self.dt:
            raise ValueError("t_max must be at least 10 * dt")
        if not 0 < self.settling_band < 1:
            raise ValueError("settling_band must lie in (0, 1)")
        return self


class ConfigMargins(BaseModel):
    """Expected config[margins] format"""

    max_phase_step_deg: float = DEFAULT_MAX_PHASE_STEP_DEG


class Config(BaseModel):
    """Expected config format"""

    log: ConfigLog = ConfigLog()
    algebra: ConfigAlgebra = ConfigAlgebra()
    grid: ConfigGrid = ConfigGrid()
    fit: FitConfig = FitConfig()
    simulation: ConfigSimulation = ConfigSimulation()
    margins: ConfigMargins = ConfigMargins()

    @model_validator(mode="after")
    def check_fit_inside_cap(self: Config) -> Config:
        """Warn when fit orders approach the coefficient cap."""
        if max(self.fit.num_order, self.fit.den_order) + 3 > self.algebra.degree_cap:
            log.warning(
                "fit orders are close to algebra.degree_cap; augmented models may "
                "overflow",
                degree_cap=self.algebra.degree_cap,
            )
        return self


def load_validated_config(path: Optional[str] = None) -> Config:
    """Loads and validates configuration file.

    Args:
        path (Optional[str]): Path to config file. Defaults to None, in which case
            the built-in defaults are returned.

    Returns:
        Config: parsed and validated config

    Raises:
        ValidationError: if config is not valid
    """
    if path is None:
        return Config()
    with open(path) as config_file:
        config_data = json.load(config_file)
        return Config(**config_data)
