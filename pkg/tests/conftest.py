from __future__ import annotations

import numpy as np
import pytest

from fotf import CommensurateTf, cancel_zero, from_rational


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def step_plant() -> CommensurateTf:
    """(1 - s) / ((1 + s/2)(1 + s/3)), unit DC gain, zero at s = 1"""
    return from_rational([1.0, -1.0], [1.0, 5.0 / 6.0, 1.0 / 6.0])


@pytest.fixture
def step_family(step_plant: CommensurateTf) -> list[CommensurateTf]:
    return [step_plant, cancel_zero(step_plant, 1.0, 2), cancel_zero(step_plant, 1.0, 4)]


@pytest.fixture
def margin_plant() -> CommensurateTf:
    """4 (1 - s) / ((s + 0.1)(s + 4)), DC gain 10"""
    return from_rational([4.0, -4.0], [0.4, 4.1, 1.0])


@pytest.fixture
def margin_family(margin_plant: CommensurateTf) -> list[CommensurateTf]:
    return [
        margin_plant,
        cancel_zero(margin_plant, 1.0, 2),
        cancel_zero(margin_plant, 1.0, 4),
    ]
