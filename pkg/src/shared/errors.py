from __future__ import annotations

from enum import Enum
from typing import Any, Optional

import numpy as np
import structlog

log = structlog.get_logger()


class ErrorKind(Enum):
    """
    enums for mapping error classes to CLI exit codes. The value is the exit code,
    the name is the machine-readable `error` field printed on stderr.
    """

    ParseError = 2
    NumericalError = 3
    IOError = 4


degree_overflow_error = (
    "Polynomial degree exceeds the configured cap. This usually means the inputs "
    "are degenerate (e.g. runaway rebasing of incompatible commensurate bases)."
)
branch_cut_error = (
    "Evaluation point lies on the branch cut (open negative real s-axis) of the "
    "principal Riemann sheet."
)
pole_evaluation_error = "Evaluation point is a pole of the transfer function."
grid_too_sparse_error = (
    "Frequency grid is too sparse to bracket a detected crossing consistently, "
    "refine the grid around the crossing."
)


class FotfError(Exception):
    """
    Base exception for the fractional-order toolbox. Every error raised on purpose
    by the library derives from it, so the CLI can map it to an exit code.
    """

    kind: ErrorKind = ErrorKind.NumericalError

    def to_dict(self: FotfError) -> dict[str, Any]:
        """Machine-readable representation, printed by the CLI on stderr"""
        return {
            "error": type(self).__name__,
            "kind": self.kind.name,
            "message": str(self),
            "exit_code": self.kind.value,
        }


class DomainError(FotfError, ValueError):
    """Inputs violate a documented precondition"""

    kind = ErrorKind.NumericalError


class PayloadError(FotfError, ValueError):
    """Malformed transfer-function / request payload"""

    kind = ErrorKind.ParseError


class BranchCutError(DomainError):
    """Evaluation requested on the negative real s-axis"""

    def __init__(self: BranchCutError, s: complex) -> None:
        super().__init__(f"{branch_cut_error} s={s}")
        self.s = s


class PoleEvaluationError(FotfError):
    """Denominator vanishes at the evaluation point"""

    def __init__(self: PoleEvaluationError, s: complex) -> None:
        super().__init__(f"{pole_evaluation_error} s={s}")
        self.s = s


class DegreeOverflowError(FotfError):
    """Polynomial grew beyond the configured coefficient cap"""

    def __init__(self: DegreeOverflowError, length: int, cap: int) -> None:
        super().__init__(f"{degree_overflow_error} length={length}, cap={cap}")
        self.length = length
        self.cap = cap


class GridTooSparseError(FotfError):
    """A sign change was detected but could not be bracketed consistently"""

    def __init__(self: GridTooSparseError, omega_lo: float, omega_hi: float) -> None:
        super().__init__(
            f"{grid_too_sparse_error} bracket=[{omega_lo:.6g}, {omega_hi:.6g}] rad/s"
        )
        self.omega_lo = omega_lo
        self.omega_hi = omega_hi


class RankDeficientError(FotfError):
    """Least-squares design matrix is numerically rank deficient

    Attributes:
        singular_value (float): smallest (relative) singular value
        direction (np.ndarray): right singular vector of the smallest singular
            value, i.e. the unknown combination the data cannot resolve
        labels (list[str]): unknown names, aligned with `direction`
    """

    def __init__(
        self: RankDeficientError,
        singular_value: float,
        direction: np.ndarray,
        labels: Optional[list[str]] = None,
    ) -> None:
        self.singular_value = singular_value
        self.direction = direction
        self.labels = labels or [f"x{i}" for i in range(len(direction))]

        # Name the dominant unknowns of the null direction
        order = np.argsort(-np.abs(direction))[:3]
        dominant = ", ".join(
            f"{self.labels[i]}={direction[i]:+.3g}" for i in order
        )
        super().__init__(
            "Least-squares system is rank deficient (relative singular value "
            f"{singular_value:.3e}); smallest singular direction: {dominant}. "
            "Reduce the fit orders or widen the band."
        )


def exit_code_for(e: BaseException) -> int:
    """Exit code for an exception raised while running a CLI command

    Args:
        e (BaseException): The exception

    Returns:
        int: 2 for parse errors, 3 for numerical errors, 4 for I/O errors
    """
    if isinstance(e, FotfError):
        return e.kind.value
    if isinstance(e, OSError):
        return ErrorKind.IOError.value
    if isinstance(e, (ValueError, KeyError, TypeError)):
        return ErrorKind.ParseError.value
    return ErrorKind.NumericalError.value


def describe_error(e: BaseException) -> dict[str, Any]:
    """Machine-readable error description

    Args:
        e (BaseException): The exception

    Returns:
        dict[str, Any]: {"error", "kind", "message", "exit_code"}
    """
    if isinstance(e, FotfError):
        return e.to_dict()

    code = exit_code_for(e)
    log.debug("Unmapped exception", error=type(e).__name__, exit_code=code)
    return {
        "error": type(e).__name__,
        "kind": ErrorKind(code).name,
        "message": str(e),
        "exit_code": code,
    }
