from __future__ import annotations

import math

import numpy as np
import pytest

from approx import RationalTf, augment
from fotf import CommensurateTf, evaluate_many, from_rational
from shared.errors import DegreeOverflowError, DomainError


@pytest.fixture
def lag() -> RationalTf:
    """1 / (s + 1)"""
    return RationalTf.from_coeffs([1.0], [1.0, 1.0])


def test_zero_denominator() -> None:
    with pytest.raises(DomainError):
        RationalTf.from_coeffs([1.0], [0.0, 0.0])


def test_properness() -> None:
    assert RationalTf.from_coeffs([1.0, 1.0], [1.0, 1.0]).is_proper
    assert not RationalTf.from_coeffs([1.0, 1.0, 1.0], [1.0, 1.0]).is_proper
    # trailing zeros do not count towards the degree
    assert RationalTf.from_coeffs([1.0, 1.0, 0.0], [1.0, 1.0]).is_proper


def test_pendulum_augmentation(lag: RationalTf) -> None:
    z = math.sqrt(9.8)
    result = augment(lag, [-z], 2)
    np.testing.assert_allclose(result.num, [z, 1.0])
    np.testing.assert_array_equal(result.den, [0.0, 0.0, 1.0, 1.0])


def test_empty_augmentation_is_identity(lag: RationalTf) -> None:
    result = augment(lag, [], 0)
    np.testing.assert_array_equal(result.num, lag.num)
    np.testing.assert_array_equal(result.den, lag.den)


def test_conjugate_pair(lag: RationalTf) -> None:
    result = augment(lag, [-1 + 2j, -1 - 2j], 1)
    assert result.num.dtype == float
    np.testing.assert_allclose(result.num, [5.0, 2.0, 1.0])
    np.testing.assert_array_equal(result.den, [0.0, 1.0, 1.0])


def test_unpaired_complex_zero(lag: RationalTf) -> None:
    with pytest.raises(DomainError):
        augment(lag, [-1 + 2j], 0)


def test_negative_integrator_count(lag: RationalTf) -> None:
    with pytest.raises(DomainError):
        augment(lag, [], -1)


def test_augmentation_respects_cap(lag: RationalTf) -> None:
    with pytest.raises(DegreeOverflowError):
        augment(lag, [], 5, cap=4)


def test_augmentation_commutes_with_evaluation(
    lag: RationalTf, rng: np.random.Generator
) -> None:
    zeros = [-2.0, 0.5 + 1j, 0.5 - 1j]
    result = augment(lag, zeros, 2)
    s = 1j * 10 ** rng.uniform(-2, 2, 50) + rng.uniform(0.1, 1.0, 50)
    expected = lag.evaluate(s) * np.prod([s - z for z in zeros], axis=0) / s**2
    np.testing.assert_allclose(result.evaluate(s), expected, rtol=1e-12)


def test_commensurate_bridge(rng: np.random.Generator) -> None:
    tf = from_rational([2.0, 1.0], [1.0, 3.0, 1.0])
    rational = RationalTf.from_commensurate(tf.rebase(4))
    np.testing.assert_array_equal(rational.num, [2.0, 1.0])
    s = 1j * 10 ** rng.uniform(-2, 2, 20)
    values, _ = evaluate_many(rational.to_commensurate(), s)
    np.testing.assert_allclose(values, rational.evaluate(s), rtol=1e-14)


def test_fractional_has_no_rational_bridge() -> None:
    with pytest.raises(DomainError):
        RationalTf.from_commensurate(CommensurateTf.from_coeffs(2, [1.0, 1.0], [1.0]))


def test_to_dict(lag: RationalTf) -> None:
    assert lag.to_dict() == {"base_v": 1, "num": [1.0], "den": [1.0, 1.0]}
