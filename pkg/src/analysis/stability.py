"""
This module contains the following:

1. matignon_stable: stability of a commensurate transfer function from the
    w-plane roots of its denominator. A root is admissible when it lies in the
    sector |arg(w)| > pi / (2 base_v).

2. internal_stability: applies the sector test to the four closed-loop transfer
    functions between the external inputs and the internal signals of a unity
    feedback loop, built without cancelling common factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from fotf.poly import FractionalPoly
from fotf.roots import wplane_roots
from fotf.transfer import CombineMode, CommensurateTf, combine
from utils.constants import DEFAULT_DEGREE_CAP, MARGINAL_BAND_RAD, ZERO_ROOT_TOLERANCE
from utils.logging import log


class Verdict(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"

    @classmethod
    def worst(cls: type[Verdict], verdicts: list[Verdict]) -> Verdict:
        """unstable beats marginal beats stable"""
        if cls.UNSTABLE in verdicts:
            return cls.UNSTABLE
        if cls.MARGINAL in verdicts:
            return cls.MARGINAL
        return cls.STABLE


@dataclass(frozen=True)
class RootVerdict:
    """One w-plane root of the denominator

    Attributes:
        root (complex): Root in w
        arg_rad (float): Principal argument of the root
        satisfies_sector (bool): True when strictly inside the stable sector
        on_boundary (bool): True when within the marginal band of the sector
            boundary, or at w = 0
    """

    root: complex
    arg_rad: float
    satisfies_sector: bool
    on_boundary: bool

    def to_dict(self: RootVerdict) -> dict[str, Any]:
        return {
            "re": self.root.real,
            "im": self.root.imag,
            "arg_deg": math.degrees(self.arg_rad),
            "satisfies_sector": self.satisfies_sector,
        }


@dataclass(frozen=True)
class StabilityReport:
    """Sector test outcome for one transfer function"""

    base_v: int
    sector_half_angle: float
    roots: list[RootVerdict]
    verdict: Verdict

    @property
    def stable(self: StabilityReport) -> bool:
        return self.verdict is Verdict.STABLE

    def to_dict(self: StabilityReport) -> dict[str, Any]:
        return {
            "base_v": self.base_v,
            "sector_half_angle": self.sector_half_angle,
            "roots": [r.to_dict() for r in self.roots],
            "verdict": self.verdict.value,
        }


def _classify(root: complex, half_angle: float) -> RootVerdict:
    if abs(root) <= ZERO_ROOT_TOLERANCE:
        # Pure fractional integrator
        return RootVerdict(complex(root), 0.0, False, True)
    arg = float(np.angle(root))
    margin = abs(arg) - half_angle
    return RootVerdict(
        root=complex(root),
        arg_rad=arg,
        satisfies_sector=margin > MARGINAL_BAND_RAD,
        on_boundary=abs(margin) <= MARGINAL_BAND_RAD,
    )


def matignon_stable(tf: CommensurateTf) -> StabilityReport:
    """Sector stability test on the denominator roots in w.

    With base_v = 1 the sector is the open left half-plane (half-angle pi/2), so
    the test reduces to the classical real-part test.

    Args:
        tf (CommensurateTf): Transfer function, as written (no reduction)

    Returns:
        StabilityReport: every w-root with its argument, and the verdict: stable
            iff every root is strictly inside the sector, marginal iff none is
            outside but some lie on the boundary (or at w = 0)
    """
    half_angle = math.pi / (2 * tf.base_v)
    roots = [_classify(r, half_angle) for r in wplane_roots(tf.den)]

    if any(not r.satisfies_sector and not r.on_boundary for r in roots):
        verdict = Verdict.UNSTABLE
    elif any(r.on_boundary for r in roots):
        verdict = Verdict.MARGINAL
    else:
        verdict = Verdict.STABLE

    log.debug(
        "Sector test", base_v=tf.base_v, roots=len(roots), verdict=verdict.value
    )
    return StabilityReport(tf.base_v, half_angle, roots, verdict)


# Closed-loop transfer functions of the unity feedback loop, in report order
LOOP_FUNCTIONS = ("S", "CS", "PS", "T")


@dataclass(frozen=True)
class InternalStabilityReport:
    """Internal stability of the loop closed around plant P and controller C

    Attributes:
        characteristic (FractionalPoly): Shared uncancelled denominator
            P.den * C.den + P.num * C.num
        transfer_functions (dict[str, CommensurateTf]): S = 1/(1+PC),
            CS = C/(1+PC), PS = P/(1+PC), T = PC/(1+PC)
        reports (dict[str, StabilityReport]): Sector test per transfer function
        verdict (Verdict): stable iff all four are stable
    """

    characteristic: FractionalPoly
    transfer_functions: dict[str, CommensurateTf]
    reports: dict[str, StabilityReport]
    verdict: Verdict

    def to_dict(self: InternalStabilityReport) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "characteristic": {
                "base_v": self.characteristic.base_v,
                "coeffs": self.characteristic.to_list(),
            },
            "transfer_functions": {
                name: {
                    "tf": self.transfer_functions[name].to_dict(),
                    "stability": self.reports[name].to_dict(),
                }
                for name in LOOP_FUNCTIONS
            },
        }


def internal_stability(
    plant: CommensurateTf, controller: CommensurateTf, cap: int = DEFAULT_DEGREE_CAP
) -> InternalStabilityReport:
    """Four-transfer-function internal stability test.

    Every closed-loop function is built with combine, so P-C cancellations stay
    visible in the shared characteristic polynomial.

    Args:
        plant (CommensurateTf): P
        controller (CommensurateTf): C
        cap (int): Coefficient cap forwarded to combine

    Returns:
        InternalStabilityReport: per-function reports and the overall verdict

    Raises:
        DomainError: If 1 + PC vanishes identically
    """
    loop = combine(plant, controller, CombineMode.SERIES, cap)
    one = CommensurateTf.one(loop.base_v)
    closed = {
        "S": combine(loop, one, CombineMode.FEEDBACK, cap),
        "CS": combine(plant, controller, CombineMode.FEEDBACK, cap),
        "PS": combine(controller, plant, CombineMode.FEEDBACK, cap),
        "T": combine(one, loop, CombineMode.FEEDBACK, cap),
    }
    reports = {name: matignon_stable(tf) for name, tf in closed.items()}
    verdict = Verdict.worst([r.verdict for r in reports.values()])

    log.debug("Internal stability", verdict=verdict.value)
    return InternalStabilityReport(
        characteristic=closed["CS"].den,
        transfer_functions=closed,
        reports=reports,
        verdict=verdict,
    )
