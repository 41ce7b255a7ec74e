"""
This module contains the following:

1. CommensurateTf: fractional-order transfer function num(w)/den(w) with
    w = s^(1/base_v), evaluated on the principal Riemann sheet.

2. from_rational: ingests an integer-order transfer function (base_v = 1).

3. combine: loop algebra (series product, quotient, unity-feedback closure) over
    the lcm of the operand bases. Common factors are never cancelled, internal
    stability analysis needs the full characteristic polynomial.

4. evaluate: principal-branch evaluation, vectorised variant `evaluate_many`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence, Union

import numpy as np

from shared.errors import BranchCutError, DomainError, PoleEvaluationError
from utils.constants import DEFAULT_DEGREE_CAP

from .poly import ArrayLike, FractionalPoly, check_cap


class CombineMode(Enum):
    """Loop algebra operations"""

    SERIES = "series-product"
    QUOTIENT = "quotient"
    FEEDBACK = "unity-feedback-closure"


@dataclass(frozen=True)
class CommensurateTf:
    """Commensurate fractional-order transfer function

    With base_v = 1 this is exactly an integer-order rational transfer function.

    Attributes:
        num (FractionalPoly): Numerator in w
        den (FractionalPoly): Denominator in w, never the zero polynomial
    """

    num: FractionalPoly
    den: FractionalPoly

    def __post_init__(self: CommensurateTf) -> None:
        if self.num.base_v != self.den.base_v:
            raise DomainError(
                f"numerator base {self.num.base_v} != denominator base "
                f"{self.den.base_v}; rebase first"
            )
        if self.den.is_zero:
            raise DomainError("transfer function denominator is the zero polynomial")

    @classmethod
    def from_coeffs(
        cls: type[CommensurateTf], base_v: int, num: ArrayLike, den: ArrayLike
    ) -> CommensurateTf:
        """Build from ascending w-coefficient vectors over a shared base"""
        return cls(FractionalPoly(base_v, num), FractionalPoly(base_v, den))

    @classmethod
    def one(cls: type[CommensurateTf], base_v: int = 1) -> CommensurateTf:
        """Identity system"""
        return cls(FractionalPoly.one(base_v), FractionalPoly.one(base_v))

    @property
    def base_v(self: CommensurateTf) -> int:
        return self.num.base_v

    def rebase(
        self: CommensurateTf, base_v: int, cap: int = DEFAULT_DEGREE_CAP
    ) -> CommensurateTf:
        """Same function over a finer base (a multiple of the current one)"""
        return CommensurateTf(self.num.rebase(base_v, cap), self.den.rebase(base_v, cap))

    def reduced(self: CommensurateTf) -> CommensurateTf:
        """Same function over the coarsest base able to represent it

        Divides base_v by the gcd of every exponent in use, so e.g. a function
        written over base 2 with even powers only comes back as base 1.
        """
        k = math.gcd(self.num.exponent_gcd(), self.den.exponent_gcd(), self.base_v)
        if k <= 1:
            return self
        return CommensurateTf(self.num.compress(k), self.den.compress(k))

    @property
    def is_rational(self: CommensurateTf) -> bool:
        """True when the function is integer-order, whatever base it is written in"""
        return self.reduced().base_v == 1

    def dc_gain(self: CommensurateTf) -> float:
        """Value at s = 0 (num[0] / den[0])

        Raises:
            PoleEvaluationError: If the denominator vanishes at s = 0
        """
        return float(evaluate(self, 0.0).real)

    def to_dict(self: CommensurateTf) -> dict[str, Any]:
        """Transfer-function JSON object"""
        return {
            "base_v": self.base_v,
            "num": self.num.to_list(),
            "den": self.den.to_list(),
        }


def from_rational(num_coeffs: ArrayLike, den_coeffs: ArrayLike) -> CommensurateTf:
    """Integer-order transfer function from coefficients ascending in s.

    Args:
        num_coeffs (ArrayLike): Numerator coefficients, num_coeffs[k] multiplies s^k
        den_coeffs (ArrayLike): Denominator coefficients, not all zero

    Returns:
        CommensurateTf: base_v = 1 transfer function

    Raises:
        DomainError: If the denominator is identically zero
    """
    return CommensurateTf.from_coeffs(1, num_coeffs, den_coeffs)


def _common_base(
    a: CommensurateTf, b: CommensurateTf, cap: int
) -> tuple[CommensurateTf, CommensurateTf]:
    base = math.lcm(a.base_v, b.base_v)
    return a.rebase(base, cap), b.rebase(base, cap)


def _checked(tf: CommensurateTf, cap: int) -> CommensurateTf:
    check_cap(len(tf.num.coeffs), cap)
    check_cap(len(tf.den.coeffs), cap)
    return tf


def combine(
    a: CommensurateTf,
    b: CommensurateTf,
    mode: Union[CombineMode, str],
    cap: int = DEFAULT_DEGREE_CAP,
) -> CommensurateTf:
    """Loop algebra of two transfer functions.

    Modes:
        series-product: a * b
        quotient: a / b
        unity-feedback-closure: b / (1 + a * b), i.e. b is the forward element of
            the loop closed around a. With a = P and b = C this is C / (1 + PC),
            the reference-to-control transfer function.

    The result lives on base lcm(a.base_v, b.base_v). No common factor is ever
    cancelled.

    Args:
        a (CommensurateTf): First operand
        b (CommensurateTf): Second operand
        mode (Union[CombineMode, str]): Operation
        cap (int): Largest coefficient count allowed in the result

    Returns:
        CommensurateTf: Combined transfer function

    Raises:
        DomainError: If dividing by the zero transfer function, or the closed loop
            characteristic polynomial vanishes identically
        DegreeOverflowError: If the result exceeds `cap` coefficients
    """
    mode = CombineMode(mode)
    a, b = _common_base(a, b, cap)

    match mode:
        case CombineMode.SERIES:
            return _checked(CommensurateTf(a.num * b.num, a.den * b.den), cap)
        case CombineMode.QUOTIENT:
            if b.num.is_zero:
                raise DomainError("division by the zero transfer function")
            return _checked(CommensurateTf(a.num * b.den, a.den * b.num), cap)
        case CombineMode.FEEDBACK:
            characteristic = a.den * b.den + a.num * b.num
            if characteristic.is_zero:
                raise DomainError("1 + a*b vanishes identically")
            return _checked(CommensurateTf(b.num * a.den, characteristic), cap)

    raise DomainError(f"unknown combine mode {mode}")


def principal_root(s: np.ndarray, base_v: int) -> np.ndarray:
    """w = |s|^(1/v) exp(j arg(s) / v), arg(s) in (-pi, pi]"""
    return np.abs(s) ** (1.0 / base_v) * np.exp(1j * np.angle(s) / base_v)


def on_branch_cut(s: np.ndarray) -> np.ndarray:
    """Mask of points on the open negative real axis"""
    return (np.imag(s) == 0) & (np.real(s) < 0)


def evaluate_many(
    tf: CommensurateTf, s: Union[Sequence[complex], np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised principal-sheet evaluation.

    Args:
        tf (CommensurateTf): Transfer function
        s (Union[Sequence[complex], np.ndarray]): Points off the branch cut

    Returns:
        tuple[np.ndarray, np.ndarray]: (values, pole_mask); values are NaN where
            the denominator vanishes exactly (pole_mask True)

    Raises:
        BranchCutError: If any point lies on the negative real axis
    """
    s = np.asarray(s, dtype=complex)
    cut = on_branch_cut(s)
    if np.any(cut):
        raise BranchCutError(complex(s[cut][0]))

    w = principal_root(s, tf.base_v)
    num = tf.num(w)
    den = tf.den(w)
    poles = den == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(poles, np.nan + 0j, num / np.where(poles, 1.0, den))
    return values, poles


def evaluate(tf: CommensurateTf, s: complex) -> complex:
    """Evaluate on the principal Riemann sheet.

    w = |s|^(1/v) exp(j arg(s)/v) with arg(s) in (-pi, pi]; s = 0 maps to w = 0.

    Args:
        tf (CommensurateTf): Transfer function
        s (complex): Evaluation point, not on the open negative real axis

    Returns:
        complex: num(w) / den(w)

    Raises:
        BranchCutError: If s is a negative real number
        PoleEvaluationError: If den(w) = 0
    """
    values, poles = evaluate_many(tf, np.array([s], dtype=complex))
    if poles[0]:
        raise PoleEvaluationError(complex(s))
    return complex(values[0])
