from __future__ import annotations

import numpy as np
import pytest

from fotf import (
    CancellerSpec,
    CombineMode,
    CommensurateTf,
    FractionalPoly,
    cancel_zero,
    combine,
    evaluate,
    evaluate_many,
    from_rational,
    make_canceller,
)
from shared.errors import (
    BranchCutError,
    DegreeOverflowError,
    DomainError,
    PoleEvaluationError,
)


def test_principal_branch_evaluation() -> None:
    tf = CommensurateTf.from_coeffs(2, [1.0, -1.0], [1.0])
    value = evaluate(tf, 1j)
    assert value == pytest.approx(1 - np.exp(1j * np.pi / 4), abs=1e-15)
    assert value.real == pytest.approx(0.29289, abs=1e-5)
    assert value.imag == pytest.approx(-0.70711, abs=1e-5)


@pytest.mark.parametrize("lam", [0.5, 1.0, 16.0])
@pytest.mark.parametrize("v", [2, 4, 8])
def test_canceller_is_one_at_dc(lam: float, v: int) -> None:
    assert evaluate(make_canceller(CancellerSpec(lam, v)), 0.0) == 1.0


def test_branch_cut_is_rejected() -> None:
    tf = CommensurateTf.from_coeffs(2, [1.0], [1.0, 1.0])
    with pytest.raises(BranchCutError):
        evaluate(tf, -2.0)
    with pytest.raises(BranchCutError):
        evaluate_many(tf, [1j, -1.0 + 0j])


def test_integer_order_has_no_branch_cut_exemption() -> None:
    # The cut applies to every base, including integer-order functions
    with pytest.raises(BranchCutError):
        evaluate(from_rational([1.0], [1.0, 1.0]), -3.0)


def test_pole_hit() -> None:
    integrator = from_rational([1.0], [0.0, 1.0])
    with pytest.raises(PoleEvaluationError):
        evaluate(integrator, 0.0)
    values, poles = evaluate_many(integrator, [0.0, 1j])
    assert poles.tolist() == [True, False]
    assert np.isnan(values[0])
    assert values[1] == pytest.approx(-1j)


def test_conjugate_symmetry(rng: np.random.Generator) -> None:
    tf = CommensurateTf.from_coeffs(4, rng.normal(size=5), [1.0, 2.0, 1.5, 0.5, 0.1])
    s = 10 ** rng.uniform(-2, 2, 50) * np.exp(1j * rng.uniform(0.01, 3.1, 50))
    upper, _ = evaluate_many(tf, s)
    lower, _ = evaluate_many(tf, np.conj(s))
    np.testing.assert_allclose(lower, np.conj(upper), rtol=1e-12)


def test_denominator_must_be_nonzero() -> None:
    with pytest.raises(DomainError):
        CommensurateTf.from_coeffs(1, [1.0], [0.0])


def test_mixed_bases_are_rejected() -> None:
    with pytest.raises(DomainError):
        CommensurateTf(FractionalPoly(1, [1.0]), FractionalPoly(2, [1.0]))


def test_series_rebases_to_lcm() -> None:
    a = CommensurateTf.from_coeffs(2, [1.0, 1.0], [1.0])
    b = CommensurateTf.from_coeffs(3, [1.0], [1.0, 1.0])
    result = combine(a, b, CombineMode.SERIES)
    assert result.base_v == 6
    assert result.num.to_list() == [1.0, 0.0, 0.0, 1.0]
    assert result.den.to_list() == [1.0, 0.0, 1.0]


def test_quotient(margin_plant: CommensurateTf) -> None:
    q = make_canceller(CancellerSpec(1.0, 2))
    pf = combine(margin_plant, q, "quotient")
    s = 0.5j
    assert evaluate(pf, s) == pytest.approx(
        evaluate(margin_plant, s) / evaluate(q, s), rel=1e-12
    )


def test_quotient_by_zero() -> None:
    zero = from_rational([0.0], [1.0])
    with pytest.raises(DomainError):
        combine(CommensurateTf.one(), zero, CombineMode.QUOTIENT)


def test_feedback_closure_keeps_common_factors() -> None:
    plant = from_rational([-1.0, 1.0], [2.0, 1.0])
    controller = from_rational([1.0], [-1.0, 1.0])
    closed = combine(plant, controller, CombineMode.FEEDBACK)
    # C / (1 + PC) = (s + 2) / ((s + 2)(s - 1) + (s - 1)), nothing cancelled
    assert closed.num.to_list() == [2.0, 1.0]
    assert closed.den.to_list() == [-3.0, 2.0, 1.0]


def test_feedback_closure_value(rng: np.random.Generator) -> None:
    a = CommensurateTf.from_coeffs(2, [1.0, 0.5], [2.0, 1.0, 1.0])
    b = CommensurateTf.from_coeffs(4, [0.3, 1.0], [1.0, 1.0])
    closed = combine(a, b, CombineMode.FEEDBACK)
    for s in 1j * 10 ** rng.uniform(-2, 2, 10):
        av, bv = evaluate(a, s), evaluate(b, s)
        assert evaluate(closed, s) == pytest.approx(bv / (1 + av * bv), rel=1e-12)


def test_feedback_with_vanishing_characteristic() -> None:
    one = CommensurateTf.one()
    minus_one = from_rational([-1.0], [1.0])
    with pytest.raises(DomainError):
        combine(minus_one, one, CombineMode.FEEDBACK)


def test_combine_respects_cap() -> None:
    a = CommensurateTf.from_coeffs(1, np.ones(10), [1.0])
    with pytest.raises(DegreeOverflowError):
        combine(a, a, CombineMode.SERIES, cap=12)


def test_unknown_mode() -> None:
    with pytest.raises(ValueError):
        combine(CommensurateTf.one(), CommensurateTf.one(), "parallel")


def test_cancelled_plant_times_canceller(margin_plant: CommensurateTf) -> None:
    q = make_canceller(CancellerSpec(1.0, 4))
    pf = cancel_zero(margin_plant, 1.0, 4)
    s = 0.3j
    assert evaluate(pf, s) * evaluate(q, s) == pytest.approx(
        evaluate(margin_plant, s), rel=1e-12
    )


@pytest.mark.parametrize("v", [2, 4, 8])
def test_dc_is_preserved(margin_plant: CommensurateTf, v: int) -> None:
    assert cancel_zero(margin_plant, 1.0, v).dc_gain() == margin_plant.dc_gain()


def test_dc_gain(margin_plant: CommensurateTf) -> None:
    assert margin_plant.dc_gain() == pytest.approx(10.0)


def test_reduced_detects_integer_order() -> None:
    tf = from_rational([1.0, 2.0], [3.0, 0.0, 1.0]).rebase(4)
    assert tf.base_v == 4
    assert tf.is_rational
    reduced = tf.reduced()
    assert reduced.base_v == 1
    assert reduced.num.to_list() == [1.0, 2.0]


def test_reduced_keeps_fractional() -> None:
    tf = CommensurateTf.from_coeffs(4, [1.0, 0.0, 1.0], [1.0])
    reduced = tf.reduced()
    assert reduced.base_v == 2
    assert not reduced.is_rational


def test_to_dict() -> None:
    tf = CommensurateTf.from_coeffs(2, [1.0, -1.0], [1.0, 0.0, 1.0])
    assert tf.to_dict() == {"base_v": 2, "num": [1.0, -1.0], "den": [1.0, 0.0, 1.0]}


def test_reference_to_control_closure() -> None:
    plant = from_rational([-1.0, 1.0], [2.0, 1.0])
    controller = CommensurateTf.from_coeffs(2, [1.0], [1.0, 1.0])
    closed = combine(plant, controller, CombineMode.FEEDBACK)
    assert closed.base_v == 2
    # (s + 2) / ((w + 1)(w^2 + w + 1)) with w = s^(1/2)
    assert closed.num.to_list() == [2.0, 0.0, 1.0]
    assert closed.den.to_list() == [1.0, 2.0, 2.0, 1.0]


def test_series_is_an_evaluation_homomorphism() -> None:
    a = CommensurateTf.from_coeffs(2, [1.0, 0.5], [1.0, 2.0, 1.0])
    b = CommensurateTf.from_coeffs(4, [2.0, -1.0], [1.0, 0.0, 3.0])
    result = combine(a, b, CombineMode.SERIES)
    assert result.base_v == 4
    assert evaluate(result, 1.0) == pytest.approx(
        evaluate(a, 1.0) * evaluate(b, 1.0), rel=1e-14
    )
