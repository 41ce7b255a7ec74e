"""
Command-line front end.

Every subcommand writes exactly one artifact (JSON or CSV) to stdout, or to
--output. Logs, tables and errors go to stderr; a failing command prints a
machine-readable error object there and exits with

    2   malformed arguments, JSON or configuration
    3   numerical / domain errors raised by the library
    4   I/O errors
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NoReturn, Optional

from analysis.margins import margins
from analysis.response import FrequencyGrid, frequency_response
from analysis.stability import internal_stability, matignon_stable
from approx.fit import fit_rational, fractional_response_of
from approx.rational import augment
from fotf.canceller import make_multi_canceller, make_ratio_canceller
from fotf.transfer import CombineMode, CommensurateTf, combine
from shared.config import Config, ConfigLog, load_validated_config
from shared.errors import PayloadError, describe_error
from timedomain.pipeline import step_of_fractional
from utils.logging import log, log_status, setup_logging
from utils.serialization import dumps
from version import __version__

from .examples import EXAMPLE_IDS, reproduce_example
from .payloads import load_tf
from .render import render_bundle

# Option dests of the form "<config section>__<field>" override the loaded config
_OVERRIDE_SEPARATOR = "__"


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser raising PayloadError instead of exiting"""

    def error(self: _ArgumentParser, message: str) -> NoReturn:
        raise PayloadError(f"{self.prog}: {message}")


def _add_grid_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("frequency grid")
    group.add_argument("--omega-min", dest="grid__omega_min", type=float)
    group.add_argument("--omega-max", dest="grid__omega_max", type=float)
    group.add_argument("--n-points", dest="grid__n_points", type=int)


def _add_fit_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("rational fit")
    group.add_argument("--omega-min", dest="fit__omega_min", type=float)
    group.add_argument("--omega-max", dest="fit__omega_max", type=float)
    group.add_argument("--n-points", dest="fit__n_points", type=int)
    group.add_argument("--num-order", dest="fit__num_order", type=int)
    group.add_argument("--den-order", dest="fit__den_order", type=int)
    group.add_argument("--sk-iterations", dest="fit__sk_iterations", type=int)
    group.add_argument(
        "--no-refine",
        dest="fit__refine",
        action="store_false",
        default=None,
        help="skip the output-error polish of the linear fit",
    )


def _add_simulation_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("simulation")
    group.add_argument("--t-max", dest="simulation__t_max", type=float)
    group.add_argument("--dt", dest="simulation__dt", type=float)
    group.add_argument("--band", dest="simulation__settling_band", type=float)


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per subcommand"""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file, defaults otherwise")
    common.add_argument(
        "--log-level", dest="log__level", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    common.add_argument("-o", "--output", help="write the artifact here, not stdout")

    parser = _ArgumentParser(
        prog="fotf",
        description="Fractional-order cancellation of non-minimum phase zeros",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, summary: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=summary, parents=[common])

    bode = add("bode", "Bode CSV of a transfer function")
    bode.add_argument("--tf", required=True)
    _add_grid_options(bode)

    margin = add("margins", "phase and gain margins of an open loop")
    margin.add_argument("--tf", required=True)
    _add_grid_options(margin)

    stability = add("stability", "sector stability test")
    stability.add_argument("--tf", required=True)

    internal = add("internal-stability", "four-function internal stability test")
    internal.add_argument("--plant", required=True)
    internal.add_argument("--controller", required=True)

    cancel = add("cancel", "canceller Q_{lambda,v} or the cancelled plant P/Q")
    zeros = cancel.add_mutually_exclusive_group(required=True)
    zeros.add_argument("--lambda", dest="lam", type=float, action="append")
    zeros.add_argument("--ratio", nargs=2, type=float, metavar=("P", "Z"))
    cancel.add_argument("--v", type=int, required=True)
    cancel.add_argument("--plant")

    fit = add("fit", "rational least-squares fit of a transfer function")
    fit.add_argument("--tf", required=True)
    _add_fit_options(fit)
    fit.add_argument(
        "--augment-zero",
        type=complex,
        action="append",
        default=[],
        help="zero to multiply in after the fit, e.g. --augment-zero=-1+2j",
    )
    fit.add_argument("--integrators", type=int, default=0)

    step = add("step", "step response metrics through a rational realization")
    step.add_argument("--tf", required=True)
    step.add_argument("--lambda", dest="lam", type=float)
    step.add_argument("--trace", help="also write the trace CSV here")
    _add_fit_options(step)
    _add_simulation_options(step)

    example = add("example", "reproduce a scripted example")
    example.add_argument("example", choices=EXAMPLE_IDS)
    example.add_argument("--output-dir", help="directory for the CSV artifacts")
    example.add_argument("--quiet", action="store_true", help="no summary table")

    return parser


@dataclass(frozen=True)
class Command:
    """Parsed invocation

    Attributes:
        subcommand (str): Subcommand name
        args (argparse.Namespace): Subcommand arguments
        config (Config): Loaded config with command-line overrides applied
        output (Optional[str]): Artifact path, stdout when None
    """

    subcommand: str
    args: argparse.Namespace
    config: Config
    output: Optional[str]

    @classmethod
    def parse(cls: type[Command], argv: list[str]) -> Command:
        """Parse arguments and build the effective config.

        Raises:
            PayloadError: If the arguments do not parse
            ValidationError: If the config or an override is out of range
            OSError: If --config cannot be read
        """
        args = build_parser().parse_args(argv)
        config = load_validated_config(args.config)

        data = config.model_dump()
        for dest, value in vars(args).items():
            if _OVERRIDE_SEPARATOR not in dest or value is None:
                continue
            section, name = dest.split(_OVERRIDE_SEPARATOR, 1)
            data[section][name] = value
        return cls(args.subcommand, args, Config.model_validate(data), args.output)


def _bode(cmd: Command) -> str:
    tf = load_tf(cmd.args.tf)
    return frequency_response(tf, FrequencyGrid.from_config(cmd.config.grid)).to_csv()


def _margins(cmd: Command) -> str:
    tf = load_tf(cmd.args.tf)
    resp = frequency_response(tf, FrequencyGrid.from_config(cmd.config.grid))
    return dumps(margins(resp, cmd.config.margins.max_phase_step_deg).to_dict())


def _stability(cmd: Command) -> str:
    return dumps(matignon_stable(load_tf(cmd.args.tf)).to_dict())


def _internal_stability(cmd: Command) -> str:
    report = internal_stability(
        load_tf(cmd.args.plant),
        load_tf(cmd.args.controller),
        cmd.config.algebra.degree_cap,
    )
    return dumps(report.to_dict())


def _cancel(cmd: Command) -> str:
    cap = cmd.config.algebra.degree_cap
    if cmd.args.ratio:
        p, z = cmd.args.ratio
        canceller = make_ratio_canceller(p, z, cmd.args.v, cap)
        # Q_p / Q_z multiplies the plant
        mode = CombineMode.SERIES
    else:
        canceller = make_multi_canceller(cmd.args.lam, cmd.args.v, cap)
        mode = CombineMode.QUOTIENT

    result: CommensurateTf = canceller
    if cmd.args.plant:
        result = combine(load_tf(cmd.args.plant), canceller, mode, cap)
    return dumps(result.to_dict())


def _fit(cmd: Command) -> str:
    tf = load_tf(cmd.args.tf)
    report = fit_rational(fractional_response_of(tf, cmd.config.fit), cmd.config.fit)
    out = report.to_dict()
    if cmd.args.augment_zero or cmd.args.integrators:
        augmented = augment(
            report.model,
            cmd.args.augment_zero,
            cmd.args.integrators,
            cmd.config.algebra.degree_cap,
        )
        out["augmented"] = augmented.to_dict()
    return dumps(out)


def _step(cmd: Command) -> str:
    sim = cmd.config.simulation
    resp, metrics, report = step_of_fractional(
        load_tf(cmd.args.tf),
        cmd.config.fit,
        sim.t_max,
        sim.dt,
        cmd.args.lam,
        sim.settling_band,
    )
    if cmd.args.trace:
        Path(cmd.args.trace).write_text(resp.to_csv())
    return dumps(
        {
            "metrics": metrics.to_dict(),
            "diverged": resp.diverged,
            "model": report.model.to_dict(),
            "fit_max_mag_error_db": report.max_mag_error_db,
            "fit_max_phase_error_deg": report.max_phase_error_deg,
        }
    )


def _example(cmd: Command) -> str:
    bundle = reproduce_example(cmd.args.example, cmd.config)
    if cmd.args.output_dir:
        directory = Path(cmd.args.output_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for name, text in bundle.artifacts.items():
            (directory / name).write_text(text)
    if not cmd.args.quiet:
        render_bundle(bundle)
        log_status(f"example {bundle.example} reproduced", "success")
    return dumps(bundle.report)


_HANDLERS: dict[str, Callable[[Command], str]] = {
    "bode": _bode,
    "margins": _margins,
    "stability": _stability,
    "internal-stability": _internal_stability,
    "cancel": _cancel,
    "fit": _fit,
    "step": _step,
    "example": _example,
}


def report_error(e: BaseException) -> int:
    """Print the error object on stderr and return its exit code"""
    description = describe_error(e)
    log.error("Command failed", **description)
    sys.stderr.write(dumps(description) + "\n")
    return int(description["exit_code"])


def _emit(artifact: str, output: Optional[str]) -> None:
    text = artifact if artifact.endswith("\n") else artifact + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def dispatch(cmd: Command) -> int:
    """Run a parsed command

    Args:
        cmd (Command): Parsed invocation

    Returns:
        int: 0 on success, the error's exit code otherwise
    """
    try:
        _emit(_HANDLERS[cmd.subcommand](cmd), cmd.output)
    except Exception as e:
        return report_error(e)
    return 0


def run(argv: list[str]) -> int:
    """Parse, set up logging and dispatch

    Args:
        argv (list[str]): Arguments without the program name

    Returns:
        int: Process exit code
    """
    # Default handlers first, structlog alone would print to stdout
    setup_logging(ConfigLog())
    try:
        cmd = Command.parse(argv)
    except Exception as e:
        return report_error(e)

    setup_logging(cmd.config.log)
    log.debug("Running command", subcommand=cmd.subcommand, version=__version__)
    return dispatch(cmd)
