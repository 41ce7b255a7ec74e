from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from fotf.poly import ArrayLike, FractionalPoly, check_cap
from fotf.transfer import CommensurateTf
from shared.errors import DomainError
from utils.constants import DEFAULT_DEGREE_CAP

# Relative mismatch tolerated when pairing a complex zero with its conjugate
CONJUGATE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class RationalTf:
    """Integer-order transfer function num(s) / den(s)

    Attributes:
        num (np.ndarray): Numerator coefficients ascending in s
        den (np.ndarray): Denominator coefficients ascending in s, not all zero
    """

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self: RationalTf) -> None:
        # FractionalPoly over base 1 does the finiteness check and zero stripping
        num = FractionalPoly(1, self.num).coeffs
        den = FractionalPoly(1, self.den)
        if den.is_zero:
            raise DomainError("rational denominator is the zero polynomial")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den.coeffs)

    @classmethod
    def from_coeffs(
        cls: type[RationalTf], num: ArrayLike, den: ArrayLike
    ) -> RationalTf:
        return cls(np.asarray(num, dtype=float), np.asarray(den, dtype=float))

    @property
    def num_degree(self: RationalTf) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self: RationalTf) -> int:
        return len(self.den) - 1

    @property
    def is_proper(self: RationalTf) -> bool:
        """deg(num) <= deg(den)"""
        return self.num_degree <= self.den_degree

    def evaluate(
        self: RationalTf, s: Union[complex, Sequence[complex], np.ndarray]
    ) -> np.ndarray:
        """num(s) / den(s), vectorised over s"""
        s = np.asarray(s, dtype=complex)
        return P.polyval(s, self.num) / P.polyval(s, self.den)

    def to_commensurate(self: RationalTf) -> CommensurateTf:
        return CommensurateTf.from_coeffs(1, self.num, self.den)

    @classmethod
    def from_commensurate(cls: type[RationalTf], tf: CommensurateTf) -> RationalTf:
        """Bridge from a commensurate function that is integer-order

        Raises:
            DomainError: If tf cannot be written over base 1
        """
        reduced = tf.reduced()
        if reduced.base_v != 1:
            raise DomainError(
                f"transfer function needs base {reduced.base_v}, not integer-order"
            )
        return cls(reduced.num.coeffs, reduced.den.coeffs)

    def to_dict(self: RationalTf) -> dict[str, Any]:
        """Transfer-function JSON object with base_v = 1"""
        return self.to_commensurate().to_dict()


def _check_conjugate_closed(zeros: np.ndarray) -> None:
    if zeros.size == 0:
        return
    ordered = np.sort_complex(zeros)
    mirrored = np.sort_complex(np.conj(zeros))
    scale = np.maximum(1.0, np.abs(ordered))
    if np.any(np.abs(ordered - mirrored) > CONJUGATE_TOLERANCE * scale):
        raise DomainError(
            "extra zeros must be closed under conjugation to keep real coefficients"
        )


def augment(
    base: RationalTf,
    extra_zeros: Sequence[complex],
    extra_integrator_poles: int = 0,
    cap: int = DEFAULT_DEGREE_CAP,
) -> RationalTf:
    """Multiply in zeros and integrators after a fit.

    num(s) gains prod (s - z_i), den(s) gains s^k.

    Args:
        base (RationalTf): Fitted model
        extra_zeros (Sequence[complex]): Zeros to add, closed under conjugation
        extra_integrator_poles (int): Number of poles at s = 0 to add
        cap (int): Largest coefficient count allowed in the result

    Returns:
        RationalTf: Augmented model with real coefficients

    Raises:
        DomainError: If the zeros are not conjugate-closed or the count is negative
        DegreeOverflowError: If the result exceeds `cap` coefficients
    """
    if extra_integrator_poles < 0:
        raise DomainError("extra_integrator_poles must be >= 0")
    zeros = np.asarray(list(extra_zeros), dtype=complex)
    _check_conjugate_closed(zeros)

    num = base.num
    if zeros.size:
        # Conjugate closure makes the imaginary part round-off only
        factor = P.polyfromroots(zeros).real
        num = P.polymul(num, factor)
    den = np.concatenate([np.zeros(extra_integrator_poles), base.den])

    check_cap(len(num), cap)
    check_cap(len(den), cap)
    return RationalTf(num, den)
