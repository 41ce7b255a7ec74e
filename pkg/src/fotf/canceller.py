"""Fractional-order cancellers of real non-minimum phase zeros / unstable poles

For v = 2^h the factor 1 - s/lambda splits by repeated difference of squares:

    1 - s/lambda = [1 - (s/lambda)^(1/v)] * prod_{k=0}^{h-1} [1 + (s/lambda)^(2^k/v)]

The product is the canceller Q_{lambda,v}(s). Dividing a plant by it leaves the
weaker factor 1 - (s/lambda)^(1/v) in place of 1 - s/lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from shared.errors import DomainError
from utils.constants import DEFAULT_DEGREE_CAP
from utils.logging import log

from .poly import FractionalPoly
from .transfer import CombineMode, CommensurateTf, combine


def is_power_of_two(v: int) -> bool:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        return False
    return v >= 2 and not v & (v - 1)


@dataclass(frozen=True)
class CancellerSpec:
    """Canceller parameters

    Attributes:
        lam (float): Location (rad/s) of the real zero or pole being cancelled
        v (int): Expansion depth, a power of two >= 2
    """

    lam: float
    v: int

    def __post_init__(self: CancellerSpec) -> None:
        if not is_power_of_two(self.v):
            raise DomainError(f"v must be a power of two >= 2, got {self.v!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be a positive finite real, got {self.lam}")
        object.__setattr__(self, "v", int(self.v))
        object.__setattr__(self, "lam", float(self.lam))


def make_canceller(spec: CancellerSpec) -> CommensurateTf:
    """Build Q_{lambda,v}(s) = prod_{k=0}^{log2(v/2)} [1 + (s/lambda)^(2^k/v)].

    Over w = s^(1/v) each factor is 1 + c^(2^k) w^(2^k) with c = lambda^(-1/v). The
    expanded numerator has degree v - 1, constant term 1 (so Q(0) = 1) and only
    non-negative coefficients.

    Args:
        spec (CancellerSpec): lambda and v

    Returns:
        CommensurateTf: num = expanded product, den = 1, base_v = v
    """
    c = spec.lam ** (-1.0 / spec.v)
    num = FractionalPoly.one(spec.v)
    k = 1
    while k < spec.v:
        factor = np.zeros(k + 1)
        factor[0] = 1.0
        factor[k] = c**k
        num = num * FractionalPoly(spec.v, factor)
        k *= 2

    log.debug("Built canceller", lam=spec.lam, v=spec.v, degree=num.degree)
    return CommensurateTf(num, FractionalPoly.one(spec.v))


def make_ratio_canceller(
    p: float, z: float, v: int, cap: int = DEFAULT_DEGREE_CAP
) -> CommensurateTf:
    """Half cancellation of an unstable pole p and a non-minimum phase zero z.

    Q_{p,v}(s) / Q_{z,v}(s); for v = 2 this is
    sqrt(z/p) * (s^(1/2) + p^(1/2)) / (s^(1/2) + z^(1/2)), with DC gain 1.

    Args:
        p (float): Unstable pole location (rad/s)
        z (float): Non-minimum phase zero location (rad/s)
        v (int): Power of two >= 2
        cap (int): Coefficient cap forwarded to combine

    Returns:
        CommensurateTf: Ratio canceller over base v
    """
    return combine(
        make_canceller(CancellerSpec(p, v)),
        make_canceller(CancellerSpec(z, v)),
        CombineMode.QUOTIENT,
        cap,
    )


def make_multi_canceller(
    lams: Sequence[float], v: int, cap: int = DEFAULT_DEGREE_CAP
) -> CommensurateTf:
    """One canceller per non-minimum phase zero, in series

    Args:
        lams (Sequence[float]): Zero locations (rad/s), at least one
        v (int): Power of two >= 2, shared by every factor
        cap (int): Coefficient cap forwarded to combine

    Returns:
        CommensurateTf: prod_i Q_{lams[i], v}(s)
    """
    if not lams:
        raise DomainError("at least one zero location is required")
    result = make_canceller(CancellerSpec(lams[0], v))
    for lam in lams[1:]:
        result = combine(
            result, make_canceller(CancellerSpec(lam, v)), CombineMode.SERIES, cap
        )
    return result


def fractional_zero_factor(lam: float, v: int) -> CommensurateTf:
    """The weakened factor 1 - (s/lambda)^(1/v) over base v"""
    spec = CancellerSpec(lam, v)
    return CommensurateTf.from_coeffs(v, [1.0, -(spec.lam ** (-1.0 / v))], [1.0])


def cancel_zero(
    plant: CommensurateTf, lam: float, v: int, cap: int = DEFAULT_DEGREE_CAP
) -> CommensurateTf:
    """Canceller-augmented plant P / Q_{lambda,v}

    Args:
        plant (CommensurateTf): Plant with a real zero at s = lambda
        lam (float): Zero location (rad/s)
        v (int): Power of two >= 2
        cap (int): Coefficient cap forwarded to combine

    Returns:
        CommensurateTf: P / Q_{lambda,v}, uncancelled, over base lcm(base, v)
    """
    return combine(
        plant, make_canceller(CancellerSpec(lam, v)), CombineMode.QUOTIENT, cap
    )
