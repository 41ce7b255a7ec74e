"""
Rational fitting of sampled frequency responses.

Levi's linearised equation-error problem

    min sum_i w_i |N(s_i) - H_i D(s_i)|^2,  D monic in its leading coefficient

is linear in the coefficients. Rows are divided by |H_i| |D_prev(s_i)|, so that
Sanathanan-Koerner iterations approach the relative error
sum_i w_i |N/D - H|^2 / |H|^2 and the band edges, where |H| is small, are fitted
as tightly as the rest. The Levi start has no D_prev and takes
max(1, |s_i|)^na in its place, the size of a denominator with every pole at the
band centre.

The last linear iterate is then polished by nonlinear least squares on
log(N/D / H), whose real part is the magnitude error in nepers and whose
imaginary part is the phase error in radians.

Conditioning: frequencies are normalised by the geometric centre of the band,
real and imaginary parts are stacked into one real system, columns are scaled to
unit norm and the system is solved through its SVD.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import scipy.linalg
import scipy.optimize
from numpy.polynomial import polynomial as P

from analysis.response import FrequencyGrid, FrequencyResponse, frequency_response
from fotf.transfer import CommensurateTf
from shared.config import FitConfig
from shared.errors import DomainError, RankDeficientError
from utils.constants import RANK_TOLERANCE, REFINE_SKIP_TOLERANCE
from utils.logging import log

from .rational import RationalTf


@dataclass(frozen=True)
class FitReport:
    """Outcome of a rational fit

    Attributes:
        model (RationalTf): Fitted model, monic denominator
        max_mag_error_db (float): Largest |20 log10 |H_fit / H|| on the fit grid
        max_phase_error_deg (float): Largest |angle(H_fit / H)| on the fit grid
        residuals (list[float]): Weighted residual norm of every solve, Levi first
        levi_residual (float): Levi solution's residual in the final weighting
        sk_improved (bool): Last SK iterate's residual <= levi_residual, in the
            weighting of the last iterate. When False the Levi solution is kept
        refined (bool): True when the output-error polish was applied
        den_roots (np.ndarray): Poles of the fitted model
    """

    model: RationalTf
    max_mag_error_db: float
    max_phase_error_deg: float
    residuals: list[float]
    levi_residual: float
    sk_improved: bool
    refined: bool
    den_roots: np.ndarray

    def to_dict(self: FitReport) -> dict[str, Any]:
        return {
            "model": self.model.to_dict(),
            "max_mag_error_db": self.max_mag_error_db,
            "max_phase_error_deg": self.max_phase_error_deg,
            "residuals": list(self.residuals),
            "levi_residual": self.levi_residual,
            "sk_improved": self.sk_improved,
            "refined": self.refined,
            "den_roots": [complex(r) for r in self.den_roots],
        }


def _labels(nb: int, na: int) -> list[str]:
    return [f"num[{k}]" for k in range(nb + 1)] + [f"den[{k}]" for k in range(na)]


@dataclass(frozen=True)
class _LinearSystem:
    """Complex equation-error rows before weighting"""

    matrix: np.ndarray
    rhs: np.ndarray

    def residual(self: _LinearSystem, x: np.ndarray, row_weight: np.ndarray) -> float:
        r = row_weight * (self.matrix @ x - self.rhs)
        return float(np.linalg.norm(r))


def _build_system(sigma: np.ndarray, h: np.ndarray, nb: int, na: int) -> _LinearSystem:
    # Row i: sum_k b_k sigma^k - H sum_{k<na} a_k sigma^k = H sigma^na
    vander = np.vander(sigma, max(nb, na) + 1, increasing=True)
    matrix = np.hstack([vander[:, : nb + 1], -h[:, None] * vander[:, :na]])
    return _LinearSystem(matrix, h * sigma**na)


def _solve(
    system: _LinearSystem, row_weight: np.ndarray, labels: list[str]
) -> np.ndarray:
    """Weighted real least squares via column-scaled SVD"""
    a = row_weight[:, None] * system.matrix
    b = row_weight * system.rhs
    a_real = np.vstack([a.real, a.imag])
    b_real = np.concatenate([b.real, b.imag])

    scale = np.linalg.norm(a_real, axis=0)
    scale[scale == 0] = 1.0
    a_scaled = a_real / scale

    u, sv, vt = scipy.linalg.svd(a_scaled, full_matrices=False)
    relative = sv[-1] / sv[0] if sv[0] > 0 else 0.0
    if relative < RANK_TOLERANCE:
        raise RankDeficientError(float(relative), vt[-1], labels)

    y = vt.T @ ((u.T @ b_real) / sv)
    return y / scale


def _row_weight(
    weights: np.ndarray,
    sigma: np.ndarray,
    h: np.ndarray,
    den: Optional[np.ndarray],
    na: int,
) -> np.ndarray:
    if den is None:
        d_prev = np.maximum(1.0, np.abs(sigma)) ** na
    else:
        d_prev = np.abs(P.polyval(sigma, den))
    return np.sqrt(weights) / (np.abs(h) * d_prev)


def _split(x: np.ndarray, nb: int) -> tuple[np.ndarray, np.ndarray]:
    """Unknown vector -> (num, monic den) in sigma"""
    return x[: nb + 1], np.append(x[nb + 1 :], 1.0)


def _refine(
    x: np.ndarray, sigma: np.ndarray, h: np.ndarray, weights: np.ndarray, nb: int
) -> Optional[np.ndarray]:
    """Output-error polish of x, None when it does not lower the cost.

    Minimises sum_i w_i |log(N(s_i) / (D(s_i) H_i))|^2 with Levenberg-Marquardt.
    d log(N/D) / d b_k = s^k / N and d log(N/D) / d a_k = -s^k / D.
    """
    sqrt_w = np.sqrt(weights)
    na = x.size - nb - 1
    vander = np.vander(sigma, max(nb, na) + 1, increasing=True)

    def residual(xk: np.ndarray) -> np.ndarray:
        num, den = _split(xk, nb)
        with np.errstate(divide="ignore", invalid="ignore"):
            e = sqrt_w * np.log(P.polyval(sigma, num) / (P.polyval(sigma, den) * h))
        return np.concatenate([e.real, e.imag])

    def jacobian(xk: np.ndarray) -> np.ndarray:
        num, den = _split(xk, nb)
        n_val = P.polyval(sigma, num)[:, None]
        d_val = P.polyval(sigma, den)[:, None]
        columns = np.hstack([vander[:, : nb + 1] / n_val, -vander[:, :na] / d_val])
        j = sqrt_w[:, None] * columns
        return np.vstack([j.real, j.imag])

    start = residual(x)
    if not np.all(np.isfinite(start)):
        log.debug("Skipping output-error polish, start is not finite")
        return None
    if np.max(np.abs(start)) < REFINE_SKIP_TOLERANCE:
        return None

    try:
        result = scipy.optimize.least_squares(
            residual, x, jac=jacobian, method="lm", x_scale="jac"
        )
    except ValueError as e:
        log.debug("Output-error polish failed", error=str(e))
        return None

    start_cost = 0.5 * float(start @ start)
    if not (np.all(np.isfinite(result.x)) and result.cost < start_cost):
        return None
    log.debug("Output-error polish", start_cost=start_cost, cost=float(result.cost))
    return np.asarray(result.x)


def _band_errors(
    model: RationalTf, omega: np.ndarray, h: np.ndarray
) -> tuple[float, float]:
    """Largest magnitude (dB) and phase (deg) deviation of model from h"""
    ratio = model.evaluate(1j * omega) / h
    with np.errstate(divide="ignore"):
        mag_error = np.abs(20.0 * np.log10(np.abs(ratio)))
    phase_error = np.abs(np.degrees(np.angle(ratio)))
    return float(np.max(mag_error)), float(np.max(phase_error))


def exact_report(model: RationalTf, target: FrequencyResponse) -> FitReport:
    """Report for a model used as is, no least-squares solve involved"""
    mag_error, phase_error = _band_errors(model, target.omega, target.value)
    return FitReport(
        model=model,
        max_mag_error_db=mag_error,
        max_phase_error_deg=phase_error,
        residuals=[],
        levi_residual=0.0,
        sk_improved=True,
        refined=False,
        den_roots=np.roots(model.den[::-1]).astype(complex),
    )


def fit_rational(target: FrequencyResponse, cfg: FitConfig) -> FitReport:
    """Fit num(s)/den(s) of orders cfg.num_order / cfg.den_order to target.

    Args:
        target (FrequencyResponse): Samples H(j omega) to fit, no flagged points
        cfg (FitConfig): Orders, per-point weights and SK iteration count; the
            band is taken from target.omega

    Returns:
        FitReport: Fitted model with band errors and per-iteration residuals

    Raises:
        DomainError: If target has flagged samples, the orders exceed the number of
            points or the weights do not match the grid
        RankDeficientError: If the least-squares system is numerically singular
    """
    nb, na = cfg.num_order, cfg.den_order
    omega = np.asarray(target.omega, dtype=float)
    h = np.asarray(target.value, dtype=complex)

    if target.flagged or not np.all(np.isfinite(h)):
        raise DomainError("fit target has flagged (pole-hit) samples in band")
    if np.any(h == 0):
        raise DomainError("fit target vanishes in band, relative error is undefined")
    if omega.size < nb + na + 1:
        raise DomainError(
            f"orders {nb}/{na} need at least {nb + na + 1} points, got {omega.size}"
        )
    weights = cfg.weight_vector() if cfg.weights is not None else np.ones(omega.size)
    if weights.size != omega.size:
        raise DomainError("fit weights must match the target grid")

    omega0 = float(np.sqrt(omega[0] * omega[-1]))
    sigma = 1j * omega / omega0
    system = _build_system(sigma, h, nb, na)
    labels = _labels(nb, na)

    row_weight = _row_weight(weights, sigma, h, None, na)
    x = _solve(system, row_weight, labels)
    levi_x = x
    residuals = [system.residual(x, row_weight)]

    for iteration in range(cfg.sk_iterations):
        _, den = _split(x, nb)
        row_weight = _row_weight(weights, sigma, h, den, na)
        x = _solve(system, row_weight, labels)
        residuals.append(system.residual(x, row_weight))
        log.debug("SK iteration", iteration=iteration + 1, residual=residuals[-1])

    # Both iterates measured in the weighting the last one would hand on
    final_weight = _row_weight(weights, sigma, h, _split(x, nb)[1], na)
    final_residual = system.residual(x, final_weight)
    levi_residual = system.residual(levi_x, final_weight)
    noise = 1e-10 * float(np.linalg.norm(final_weight * system.rhs))
    sk_improved = final_residual <= levi_residual * (1 + 1e-9) + noise
    if not sk_improved:
        log.warning(
            "SK refinement did not improve on the Levi solution, keeping Levi",
            levi=levi_residual,
            final=final_residual,
        )
        x = levi_x

    polished = _refine(x, sigma, h, weights, nb) if cfg.refine else None
    if polished is not None:
        x = polished

    # Undo the sigma = s / omega0 normalisation, then make den monic again
    num_sigma, den_sigma = _split(x, nb)
    num = num_sigma / omega0 ** np.arange(nb + 1)
    den = den_sigma / omega0 ** np.arange(na + 1)
    num, den = num / den[-1], den / den[-1]
    model = RationalTf(num, den)

    mag_error, phase_error = _band_errors(model, omega, h)
    report = FitReport(
        model=model,
        max_mag_error_db=mag_error,
        max_phase_error_deg=phase_error,
        residuals=residuals,
        levi_residual=levi_residual,
        sk_improved=bool(sk_improved),
        refined=polished is not None,
        den_roots=np.roots(model.den[::-1]).astype(complex),
    )
    log.debug(
        "Fitted rational model",
        orders=f"{nb}/{na}",
        max_mag_error_db=report.max_mag_error_db,
        max_phase_error_deg=report.max_phase_error_deg,
    )
    return report


def fractional_response_of(tf: CommensurateTf, cfg: FitConfig) -> FrequencyResponse:
    """Exact response of tf on the fit grid of cfg"""
    return frequency_response(tf, FrequencyGrid(cfg.omega()))
