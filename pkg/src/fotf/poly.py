from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from shared.errors import DegreeOverflowError, DomainError
from utils.constants import DEFAULT_DEGREE_CAP

ArrayLike = Union[Sequence[float], np.ndarray]


def _normalize(coeffs: ArrayLike) -> np.ndarray:
    """Strip trailing (highest-power) zeros, keeping the canonical zero [0]"""
    arr = np.asarray(coeffs, dtype=float).ravel()
    if arr.size == 0:
        raise DomainError("polynomial needs at least one coefficient")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"polynomial coefficients must be finite, got {arr}")
    nonzero = np.flatnonzero(arr)
    if nonzero.size == 0:
        return np.zeros(1)
    return arr[: nonzero[-1] + 1].copy()


def check_cap(length: int, cap: int) -> None:
    """Raise DegreeOverflowError when a coefficient vector is longer than `cap`"""
    if length > cap:
        raise DegreeOverflowError(length, cap)


@dataclass(frozen=True, eq=False)
class FractionalPoly:
    """Polynomial in w = s^(1/base_v)

    Coefficients ascend in powers of w: coeffs[k] multiplies w^k. Stored exactly as
    entered apart from stripping highest-power zeros; never made monic.

    Attributes:
        base_v (int): Commensurate denominator, exponents are multiples of 1/base_v
        coeffs (np.ndarray): Read-only coefficient vector, last entry non-zero unless
            the polynomial is the canonical zero [0]
    """

    base_v: int
    coeffs: np.ndarray

    def __post_init__(self: FractionalPoly) -> None:
        if isinstance(self.base_v, bool) or int(self.base_v) != self.base_v:
            raise DomainError(f"base_v must be an integer, got {self.base_v!r}")
        if self.base_v < 1:
            raise DomainError(f"base_v must be >= 1, got {self.base_v}")
        coeffs = _normalize(self.coeffs)
        coeffs.setflags(write=False)
        object.__setattr__(self, "base_v", int(self.base_v))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def one(cls: type[FractionalPoly], base_v: int = 1) -> FractionalPoly:
        """Constant polynomial 1"""
        return cls(base_v, np.ones(1))

    @property
    def degree(self: FractionalPoly) -> int:
        """Degree in w (0 for constants, including the zero polynomial)"""
        return len(self.coeffs) - 1

    @property
    def is_zero(self: FractionalPoly) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def __eq__(self: FractionalPoly, other: object) -> bool:
        if not isinstance(other, FractionalPoly):
            return NotImplemented
        return self.base_v == other.base_v and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __hash__(self: FractionalPoly) -> int:
        return hash((self.base_v, self.coeffs.tobytes()))

    def __call__(self: FractionalPoly, w: Union[complex, np.ndarray]) -> np.ndarray:
        """Evaluate at w (not s)"""
        return P.polyval(w, self.coeffs)

    def rebase(
        self: FractionalPoly, base_v: int, cap: int = DEFAULT_DEGREE_CAP
    ) -> FractionalPoly:
        """Re-express over a finer base that is a multiple of the current one

        w_old = s^(1/v) = (s^(1/kv))^k, so coefficient j moves to index j*k.

        Args:
            base_v (int): New base, a positive multiple of self.base_v
            cap (int): Largest coefficient count allowed

        Returns:
            FractionalPoly: Same function of s over the new base

        Raises:
            DomainError: If base_v is not a multiple of the current base
            DegreeOverflowError: If the rebased vector would exceed `cap`
        """
        if base_v % self.base_v:
            raise DomainError(
                f"cannot rebase from base {self.base_v} to {base_v}: not a multiple"
            )
        k = base_v // self.base_v
        if k == 1:
            return self
        check_cap(self.degree * k + 1, cap)
        coeffs = np.zeros(self.degree * k + 1)
        coeffs[::k] = self.coeffs
        return FractionalPoly(base_v, coeffs)

    def exponent_gcd(self: FractionalPoly) -> int:
        """gcd of the w-exponents that carry non-zero coefficients (0 if constant)"""
        return int(np.gcd.reduce(np.flatnonzero(self.coeffs))) if self.degree else 0

    def compress(self: FractionalPoly, k: int) -> FractionalPoly:
        """Inverse of rebase: keep every k-th coefficient over base base_v / k"""
        if k == 1:
            return self
        if self.base_v % k or np.any(np.delete(self.coeffs, np.s_[::k])):
            raise DomainError(
                f"polynomial is not expressible over base {self.base_v // k}"
            )
        return FractionalPoly(self.base_v // k, self.coeffs[::k])

    def __mul__(self: FractionalPoly, other: FractionalPoly) -> FractionalPoly:
        if self.base_v != other.base_v:
            raise DomainError("multiply polynomials over a common base")
        return FractionalPoly(self.base_v, P.polymul(self.coeffs, other.coeffs))

    def __add__(self: FractionalPoly, other: FractionalPoly) -> FractionalPoly:
        if self.base_v != other.base_v:
            raise DomainError("add polynomials over a common base")
        return FractionalPoly(self.base_v, P.polyadd(self.coeffs, other.coeffs))

    def to_list(self: FractionalPoly) -> list[float]:
        return [float(c) for c in self.coeffs]
