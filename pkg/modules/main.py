"""Module dispatching one toolkit run and turning its outcome into a report and an exit status."""
import csv
import io
import json
import logging
import sys
import time

import numpy as np

from . import get_run_config, run_operations
from .utilities import config, custom_error

log = logging.getLogger(name="log." + __name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _to_builtin(value: object) -> object:
    """json.dumps fallback for numpy scalars and arrays."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def build_report_text(report: run_operations.Report, output_format: str) -> str:
    """Serializes the report. Raises ToolkitError if it is not JSON-serializable."""
    if output_format == "csv":
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(run_operations.csv_rows(report=report))
        return buffer.getvalue()
    try:
        return json.dumps(obj=report.to_dict(), sort_keys=True, indent=2, default=_to_builtin) + "\n"
    except TypeError as e:
        raise custom_error.ToolkitError(
            summary="TypeError",
            message=f"Error while building report: {e}.",
        ) from e


def run(run_config: get_run_config.RunConfig) -> run_operations.Report:
    """Calls run_<subcommand> from run_operations, e.g. subcommand "eigen" runs run_operations.run_eigen."""
    log.info(msg=f"Starting {run_config.subcommand} run.")
    started = time.perf_counter()
    report = getattr(run_operations, "run_" + run_config.subcommand)(run_config=run_config)
    if run_config.include_timing:
        report.wall_clock = time.perf_counter() - started
    log.info(msg=f"{run_config.subcommand} run finished, passed={report.passed}.")
    return report


def write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(file=path, mode="w", encoding="utf-8") as file:
            file.write(text)
    except OSError as e:
        raise custom_error.ToolkitError(summary="ConfigError", message=f"Cannot write report to {path}: {e}.") from e


def main(argv: list[str]) -> int:
    """
    Resolves the configuration, runs the subcommand and writes the report.

    Parameters:
        argv (list[str]): command-line arguments without the program name

    Returns:
        int: 0 when every check passed, 1 when a check failed, 2 when the run raised an error

    Raises:
        None (apart from SystemExit for --help): all error cases are written into the report.
    """
    run_config = None
    report = run_operations.Report(config={})
    try:
        run_config = get_run_config.main(argv=argv)
        config.logger(level=run_config.log_level)
        report = run(run_config=run_config)

    except custom_error.ToolkitError as e:
        report.error = e.to_dict()
        log.error(msg=f"ToolkitError. {e.summary}: {e.message}")

    except Exception as exc:  # pylint: disable=broad-except # it's intended here
        exc_type, exc_value, exc_tb = sys.exc_info()
        report.error = {"error": exc.__class__.__name__, "message": str(object=exc_value).replace("'", "")}
        log.error(msg=f"Unexpected error. {exc_type}: {exc_value}; traceback: {exc_tb}")

    if run_config is not None and not report.config:
        report.config = run_config.describe()
    output_format = run_config.output_format if run_config is not None else "json"
    path = run_config.output if run_config is not None else None

    try:
        write_output(text=build_report_text(report=report, output_format=output_format), path=path)
    except custom_error.ToolkitError as e:
        log.error(msg=f"Report could not be written. {e.summary}: {e.message}")
        return EXIT_ERROR

    if report.error is not None:
        return EXIT_ERROR
    return EXIT_PASSED if report.passed else EXIT_FAILED
