"""
Scripted example bundles. Each bundle loads its pinned fixture, runs the
library pipeline and returns a JSON-ready report plus any CSV artifacts.

    1                   step traces and undershoot / settling metrics of a plant,
                        its half-cancelled and quarter-cancelled versions
    2                   phase / gain margins of the same three-way family
    internal-stability  four-function test with a fractional controller, and
                        with a controller cancelling the unstable zero
    pendulum-fit        rational realization of the canceller-augmented
                        inverted pendulum, then zero / integrator augmentation
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from analysis.margins import margins
from analysis.response import FrequencyGrid, frequency_response
from analysis.stability import internal_stability
from approx.fit import fit_rational, fractional_response_of
from approx.rational import augment
from fotf.canceller import cancel_zero, make_ratio_canceller
from fotf.transfer import CommensurateTf
from shared.config import Config, FitConfig
from shared.errors import PayloadError
from timedomain.pipeline import step_of_fractional
from utils.logging import log

from .payloads import (
    CancellationFixture,
    InternalStabilityFixture,
    MarginsFixture,
    PendulumFixture,
    load_fixture,
    tf_from_payload,
)

EXAMPLE_IDS = ("1", "2", "internal-stability", "pendulum-fit")


@dataclass
class ExampleBundle:
    """Report of one example

    Attributes:
        example (str): Example id
        report (dict[str, Any]): JSON-ready results
        artifacts (dict[str, str]): CSV text keyed by file name
    """

    example: str
    report: dict[str, Any]
    artifacts: dict[str, str] = field(default_factory=dict)


def _family(fixture: CancellationFixture) -> dict[str, CommensurateTf]:
    """Plant followed by P / Q_{lambda,v} for every configured v"""
    plant = tf_from_payload(fixture.plant)
    family = {"P": plant}
    for v in fixture.v:
        family[f"P/Q_{v}"] = cancel_zero(plant, fixture.lam, v)
    return family


def _strictly_decreasing(values: list[Any]) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


def _step_family(config: Config) -> ExampleBundle:
    fixture = load_fixture("example1", CancellationFixture)
    systems: dict[str, Any] = {}
    artifacts: dict[str, str] = {}
    keys, undershoots = [], []

    for i, (name, tf) in enumerate(_family(fixture).items(), start=1):
        resp, metrics, fit = step_of_fractional(
            tf,
            config.fit,
            config.simulation.t_max,
            config.simulation.dt,
            fixture.lam,
            config.simulation.settling_band,
        )
        systems[name] = {
            "tf": tf.to_dict(),
            "metrics": metrics.to_dict(),
            "fit_max_mag_error_db": fit.max_mag_error_db,
            "fit_max_phase_error_deg": fit.max_phase_error_deg,
            "diverged": resp.diverged,
        }
        artifacts[f"trace_{i}.csv"] = resp.to_csv()
        keys.append(metrics.settling_rank_key)
        undershoots.append(metrics.r_us)

    report = {
        "systems": systems,
        "undershoot_decreasing": _strictly_decreasing(undershoots),
        "settling_increasing": _strictly_decreasing(keys[::-1]),
    }
    return ExampleBundle("1", report, artifacts)


def _margin_family(config: Config) -> ExampleBundle:
    fixture = load_fixture("example2", MarginsFixture)
    grid = FrequencyGrid.from_config(config.grid)
    rows = []
    for i, (name, tf) in enumerate(_family(fixture).items()):
        m = margins(frequency_response(tf, grid), config.margins.max_phase_step_deg)
        rows.append(
            {
                "system": name,
                **m.to_dict(),
                "reference_phase_margin_deg": fixture.reference.phase_margin_deg[i],
                "reference_gain_margin_db": fixture.reference.gain_margin_db[i],
            }
        )
    return ExampleBundle("2", {"margins": rows})


def _internal_stability(config: Config) -> ExampleBundle:
    fixture = load_fixture("internal_stability", InternalStabilityFixture)
    plant = tf_from_payload(fixture.plant)
    cap = config.algebra.degree_cap
    fractional = internal_stability(plant, tf_from_payload(fixture.controller), cap)
    cancelling = internal_stability(
        plant, tf_from_payload(fixture.controller_cancelling), cap
    )
    return ExampleBundle(
        "internal-stability",
        {
            "fractional_controller": fractional.to_dict(),
            "cancelling_controller": cancelling.to_dict(),
        },
    )


def pendulum_parameters(fixture: PendulumFixture) -> tuple[float, float]:
    """Unstable pole p and non-minimum phase zero z of the linearised pendulum"""
    g, length = fixture.gravity_m_s2, fixture.length_m
    m, M = fixture.pendulum_mass_kg, fixture.cart_mass_kg
    return math.sqrt(g / length + m * g / (M * length)), math.sqrt(g / length)


def pendulum_fit_target(fixture: PendulumFixture) -> CommensurateTf:
    """(s^(1/2) - z^(1/2)) / (M (s^(1/2) - p^(1/2)) (s + p)) over base 2

    The pendulum P(s) after half-cancelling both p and z, without the zero at -z,
    the double integrator and the constant sqrt(z/p).
    """
    p, z = pendulum_parameters(fixture)
    a = math.sqrt(p)
    den = fixture.cart_mass_kg * np.array([-a * p, p, -a, 1.0])
    return CommensurateTf.from_coeffs(2, [-math.sqrt(z), 1.0], den)


def _pendulum_fit(config: Config) -> ExampleBundle:
    fixture = load_fixture("pendulum", PendulumFixture)
    p, z = pendulum_parameters(fixture)
    target = pendulum_fit_target(fixture)

    fit_cfg = FitConfig(**fixture.fit)
    fit = fit_rational(fractional_response_of(target, fit_cfg), fit_cfg)
    augmented = augment(
        fit.model, [-z], fixture.integrators, config.algebra.degree_cap
    )

    # Augmentation must commute with evaluation
    rng = np.random.default_rng(0)
    s = 1j * np.logspace(-2, 2, 100) + rng.uniform(0.0, 0.5, 100)
    expected = fit.model.evaluate(s) * (s + z) / s**fixture.integrators
    identity_error = float(np.max(np.abs(augmented.evaluate(s) / expected - 1)))

    canceller_cfg = FitConfig(**fixture.canceller_fit)
    canceller = make_ratio_canceller(p, z, 2, config.algebra.degree_cap)
    canceller_fit = fit_rational(
        fractional_response_of(canceller, canceller_cfg), canceller_cfg
    )

    return ExampleBundle(
        "pendulum-fit",
        {
            "p": p,
            "z": z,
            "target": target.to_dict(),
            "fit": fit.to_dict(),
            "augmented": augmented.to_dict(),
            "augmentation_max_rel_error": identity_error,
            "canceller": canceller.to_dict(),
            "canceller_fit": canceller_fit.to_dict(),
        },
    )


_BUNDLES: dict[str, Callable[[Config], ExampleBundle]] = {
    "1": _step_family,
    "2": _margin_family,
    "internal-stability": _internal_stability,
    "pendulum-fit": _pendulum_fit,
}


def reproduce_example(example: str, config: Config) -> ExampleBundle:
    """Run one example bundle

    Args:
        example (str): One of EXAMPLE_IDS
        config (Config): Grid, fit and simulation settings

    Returns:
        ExampleBundle: report and artifacts

    Raises:
        PayloadError: If the example id is unknown
    """
    if example not in _BUNDLES:
        raise PayloadError(f"unknown example {example!r}, expected one of {EXAMPLE_IDS}")
    log.info("Reproducing example", example=example)
    return _BUNDLES[example](config)
