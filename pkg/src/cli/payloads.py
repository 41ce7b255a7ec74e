from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Type, TypeVar

from fotf.transfer import CommensurateTf
from utils.parser import TransferFunctionPayload, from_dict, load_json_argument

T = TypeVar("T")

FIXTURES = Path(__file__).parent / "fixtures"


def tf_from_payload(payload: TransferFunctionPayload) -> CommensurateTf:
    return CommensurateTf.from_coeffs(payload.base_v, payload.num, payload.den)


def load_tf(value: str) -> CommensurateTf:
    """Transfer function from inline JSON or a JSON file

    Raises:
        PayloadError: If the JSON is malformed or not a transfer-function object
        DomainError: If the coefficients are invalid (e.g. zero denominator)
    """
    return tf_from_payload(
        from_dict(TransferFunctionPayload, load_json_argument(value))
    )


@dataclass(frozen=True)
class CancellationFixture:
    """Plant with one real non-minimum phase zero and the depths to try"""

    version: int
    plant: TransferFunctionPayload
    lam: float
    v: list[int]


@dataclass(frozen=True)
class ReferenceMargins:
    phase_margin_deg: list[float]
    gain_margin_db: list[float]


@dataclass(frozen=True)
class MarginsFixture(CancellationFixture):
    reference: ReferenceMargins


@dataclass(frozen=True)
class InternalStabilityFixture:
    version: int
    plant: TransferFunctionPayload
    controller: TransferFunctionPayload
    controller_cancelling: TransferFunctionPayload


@dataclass(frozen=True)
class PendulumFixture:
    """Cart-pendulum parameters and the fit requests of its realization"""

    version: int
    cart_mass_kg: float
    pendulum_mass_kg: float
    length_m: float
    gravity_m_s2: float
    fit: dict[str, Any]
    canceller_fit: dict[str, Any]
    integrators: int


def load_fixture(name: str, data_class: Type[T]) -> T:
    """Parse fixtures/<name>.json into data_class"""
    with open(FIXTURES / f"{name}.json") as fixture:
        return from_dict(data_class, json.load(fixture))
