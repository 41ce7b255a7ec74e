"""Human-readable summaries on stderr. stdout only ever carries artifacts."""

from __future__ import annotations

from typing import Any, Optional

from rich.table import Table

from utils.logging import status_console

from .examples import ExampleBundle


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_table(
    title: str, columns: list[str], rows: list[list[Any]], caption: Optional[str] = None
) -> None:
    table = Table(title=title, caption=caption)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(v) for v in row))
    status_console().print(table)


def render_bundle(bundle: ExampleBundle) -> None:
    """Summary table of an example report"""
    report = bundle.report
    match bundle.example:
        case "1":
            render_table(
                "Step responses",
                ["system", "r_us", "r_os", "settled", "T (s)", "bound"],
                [
                    [
                        name,
                        s["metrics"]["r_us"],
                        s["metrics"]["r_os"],
                        s["metrics"]["settled"],
                        s["metrics"]["settling_time_s"],
                        s["metrics"]["undershoot_lower_bound"],
                    ]
                    for name, s in report["systems"].items()
                ],
            )
        case "2":
            render_table(
                "Margins",
                ["system", "PM (deg)", "ref", "GM (dB)", "ref", "w_c (rad/s)"],
                [
                    [
                        row["system"],
                        row["phase_margin_deg"],
                        row["reference_phase_margin_deg"],
                        row["gain_margin_db"],
                        row["reference_gain_margin_db"],
                        row["gain_crossover_rad_s"],
                    ]
                    for row in report["margins"]
                ],
            )
        case "internal-stability":
            render_table(
                "Internal stability",
                ["controller", "verdict"],
                [
                    [name, result["verdict"]]
                    for name, result in report.items()
                ],
            )
        case "pendulum-fit":
            render_table(
                "Rational realizations",
                ["model", "max |dB| error", "max phase error (deg)", "SK improved"],
                [
                    [
                        name,
                        report[name]["max_mag_error_db"],
                        report[name]["max_phase_error_deg"],
                        report[name]["sk_improved"],
                    ]
                    for name in ("fit", "canceller_fit")
                ],
            )
