from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from shared.errors import GridTooSparseError
from utils.constants import DEFAULT_MAX_PHASE_STEP_DEG
from utils.logging import log

from .response import FrequencyResponse


@dataclass(frozen=True)
class MarginReport:
    """Gain / phase margins of an open-loop response

    Missing crossings give +inf margins and None crossover frequencies. With
    several crossings the minimum (worst-case) margin is reported.

    Attributes:
        phase_margin_deg (float): 180 + phase at the gain crossover, wrapped to
            [-180, 180)
        gain_margin_db (float): -|L| in dB at the -180 deg phase crossover
        gain_crossover_rad_s (Optional[float]): Frequency of the reported PM
        phase_crossover_rad_s (Optional[float]): Frequency of the reported GM
        gain_crossover_count (int): Number of unity-gain crossings found
        phase_crossover_count (int): Number of -180 (mod 360) crossings found
    """

    phase_margin_deg: float
    gain_margin_db: float
    gain_crossover_rad_s: Optional[float]
    phase_crossover_rad_s: Optional[float]
    gain_crossover_count: int
    phase_crossover_count: int

    def to_dict(self: MarginReport) -> dict[str, Any]:
        return {
            "phase_margin_deg": self.phase_margin_deg,
            "gain_margin_db": self.gain_margin_db,
            "gain_crossover_rad_s": self.gain_crossover_rad_s,
            "phase_crossover_rad_s": self.phase_crossover_rad_s,
            "gain_crossover_count": self.gain_crossover_count,
            "phase_crossover_count": self.phase_crossover_count,
        }


@dataclass(frozen=True)
class _Crossing:
    omega: float
    mag_db: float
    phase_deg: float


def _interpolate(
    resp: FrequencyResponse, i: int, t: float
) -> _Crossing:
    """Log-linear interpolation between samples i and i + 1 at fraction t"""
    log_w = np.log10(resp.omega[i : i + 2])
    return _Crossing(
        omega=float(10 ** (log_w[0] + t * (log_w[1] - log_w[0]))),
        mag_db=float(resp.mag_db[i] + t * (resp.mag_db[i + 1] - resp.mag_db[i])),
        phase_deg=float(
            resp.phase_deg[i] + t * (resp.phase_deg[i + 1] - resp.phase_deg[i])
        ),
    )


def _check_bracket(resp: FrequencyResponse, i: int, max_phase_step: float) -> None:
    if abs(resp.phase_deg[i + 1] - resp.phase_deg[i]) > max_phase_step:
        raise GridTooSparseError(float(resp.omega[i]), float(resp.omega[i + 1]))


def _gain_crossings(
    resp: FrequencyResponse, max_phase_step: float
) -> list[_Crossing]:
    mag = resp.mag_db
    sign = np.sign(mag)
    crossings: list[_Crossing] = []
    for i in range(len(mag) - 1):
        if np.isnan(mag[i]):
            continue
        if np.isnan(mag[i + 1]):
            # A sign change hidden behind flagged samples cannot be bracketed
            hi = _next_valid(mag, i + 1)
            if hi is not None and sign[i] * sign[hi] < 0:
                raise GridTooSparseError(float(resp.omega[i]), float(resp.omega[hi]))
            continue
        if sign[i] * sign[i + 1] < 0:
            _check_bracket(resp, i, max_phase_step)
            t = mag[i] / (mag[i] - mag[i + 1])
            crossings.append(_interpolate(resp, i, t))
        elif sign[i + 1] == 0 and i + 2 < len(mag):
            # Sample exactly on 0 dB counts when its neighbours straddle it
            if sign[i] * sign[i + 2] < 0:
                crossings.append(_interpolate(resp, i, 1.0))
    return crossings


def _next_valid(values: np.ndarray, start: int) -> Optional[int]:
    return next(
        (k for k in range(start, len(values)) if not np.isnan(values[k])), None
    )


def _phase_crossings(
    resp: FrequencyResponse, max_phase_step: float
) -> list[_Crossing]:
    phase = resp.phase_deg
    # Integer part changes exactly when phase passes -180 + 360 n
    level = np.floor((phase + 180.0) / 360.0)
    crossings: list[_Crossing] = []
    for i in range(len(phase) - 1):
        if np.isnan(phase[i]) or np.isnan(phase[i + 1]):
            continue
        if level[i] == level[i + 1]:
            continue
        _check_bracket(resp, i, max_phase_step)
        target = max(level[i], level[i + 1]) * 360.0 - 180.0
        if target == phase[i] and i > 0 and level[i - 1] != level[i]:
            # Already counted at the previous interval
            continue
        t = (target - phase[i]) / (phase[i + 1] - phase[i])
        crossings.append(_interpolate(resp, i, t))
    return crossings


def _wrap_margin(phase_deg: float) -> float:
    """180 + phase, wrapped to [-180, 180)"""
    return (phase_deg + 360.0) % 360.0 - 180.0


def margins(
    resp: FrequencyResponse, max_phase_step_deg: float = DEFAULT_MAX_PHASE_STEP_DEG
) -> MarginReport:
    """Phase margin at the unity-gain crossover, gain margin at the -180 deg
    crossover.

    Crossover frequencies are interpolated linearly in log10(omega) between the
    bracketing samples, as are magnitude and phase at the crossing.

    Args:
        resp (FrequencyResponse): Open-loop response covering the crossings
        max_phase_step_deg (float): Largest phase change across a bracketing
            interval accepted as consistent

    Returns:
        MarginReport: Worst-case margins, +inf where a crossing is missing

    Raises:
        GridTooSparseError: If a detected crossing is not consistently bracketed
    """
    gain = _gain_crossings(resp, max_phase_step_deg)
    phase = _phase_crossings(resp, max_phase_step_deg)

    pm, omega_c = math.inf, None
    for crossing in gain:
        candidate = _wrap_margin(crossing.phase_deg)
        if candidate < pm:
            pm, omega_c = candidate, crossing.omega

    gm, omega_p = math.inf, None
    for crossing in phase:
        candidate = -crossing.mag_db
        if candidate < gm:
            gm, omega_p = candidate, crossing.omega

    log.debug(
        "Computed margins",
        gain_crossings=len(gain),
        phase_crossings=len(phase),
        phase_margin_deg=pm,
        gain_margin_db=gm,
    )
    return MarginReport(
        phase_margin_deg=pm,
        gain_margin_db=gm,
        gain_crossover_rad_s=omega_c,
        phase_crossover_rad_s=omega_p,
        gain_crossover_count=len(gain),
        phase_crossover_count=len(phase),
    )
