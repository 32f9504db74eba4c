"""module for resolving the run configuration from command-line flags and an optional config file"""
import argparse
import dataclasses
import logging
from typing import Any, Callable

from .utilities import config, custom_error
from .utilities.config import ALLOWED_FORMATS, ALLOWED_SUBCOMMANDS

log = logging.getLogger(name="log." + __name__)


@dataclasses.dataclass(frozen=True)
class Option:
    """One configurable key: converter for flag and file values, default, help text."""

    convert: Callable[[str], Any]
    default: Any
    help: str
    flag: bool = False


def _boolean(value: str | bool) -> bool:
    if isinstance(value, bool):
        return value
    if value.strip().lower() in ("1", "true", "yes", "on"):
        return True
    if value.strip().lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value}")


SHARED_OPTIONS: dict[str, Option] = {
    "seed": Option(convert=int, default=0, help="user seed; every random stream derives from it"),
    "output": Option(convert=str, default=None, help="report path; the report goes to stdout when omitted"),
    "format": Option(
        convert=str,
        default="json",
        help="report format: json (full report) or csv (columns: name, value, passed; one row per check)",
    ),
    "log_level": Option(convert=str.upper, default=config.LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR (logs go to stderr)"),
    "include_timing": Option(
        convert=_boolean, default=False, help="add wall-clock seconds to the report (breaks byte-identical reruns)", flag=True
    ),
}

SUBCOMMAND_OPTIONS: dict[str, dict[str, Option]] = {
    "verify": {
        "principle": Option(
            convert=str,
            default="all",
            help=f"comma-separated principles or 'all' (every sweep that applies to H); choose from {config.VERIFY_PRINCIPLES}",
        ),
        "H": Option(convert=str, default=None, help="form descriptor such as power_euclid:p=3; defaults to |z|^p in --dim"),
        "p": Option(convert=float, default=2.0, help="degree of the default form |z|^p"),
        "q": Option(convert=float, default=2.0, help="second exponent"),
        "beta": Option(convert=float, default=None, help="kinetic exponent; defaults to p - 1 (p - 1/2 for counterexample-beta)"),
        "c": Option(convert=float, default=2.0, help="counterexample scaling factor"),
        "t": Option(convert=float, default=0.5, help="counterexample interpolation time"),
        "trials": Option(convert=int, default=100_000, help="random trials per principle"),
        "dim": Option(convert=int, default=2, help="dimension of the default form"),
    },
    "eigen": {
        "energy": Option(convert=str, default="local", help="local or nonlocal"),
        "H": Option(convert=str, default=None, help="form descriptor of the local energy; defaults to |z|^p in --dim"),
        "s": Option(convert=float, default=0.5, help="fractional order of the nonlocal energy"),
        "p": Option(convert=float, default=2.0, help="energy exponent"),
        "q": Option(convert=float, default=2.0, help="constraint exponent, 1 < q <= p"),
        "dim": Option(convert=int, default=1, help="grid dimension"),
        "nodes": Option(convert=int, default=100, help="nodes per axis, boundary nodes included"),
        "extent": Option(convert=float, default=1.0, help="side length of the cube [0, extent]^dim"),
        "solver": Option(convert=str, default="convex_descent", help="convex_descent or power_iteration (p = q = 2 only)"),
        "step_rule": Option(
            convert=str,
            default="accelerated",
            help=(
                "convex descent step rule. diminishing: projected subgradient steps c0 / sqrt(k), c0 = E(rho_0) h^d."
                " accelerated: projected gradient with backtracking and restart; the default, since diminishing steps"
                " stall short of the stopping window and miss the 1e-4 agreement with power iteration"
            ),
        ),
        "tolerance": Option(convert=float, default=config.EIGEN_TOLERANCE, help="relative energy change over the stopping window"),
        "max_iterations": Option(convert=int, default=config.EIGEN_MAX_ITERATIONS, help="convex descent iteration budget"),
        "csv": Option(convert=str, default=None, help="eigenfunction CSV path (columns: x0..x{dim-1}, value)"),
    },
    "hardy": {
        "mode": Option(convert=str, default="local", help="local or fractional"),
        "N": Option(convert=int, default=3, help="dimension"),
        "p": Option(convert=float, default=2.0, help="exponent"),
        "gamma": Option(convert=float, default=0.0, help="weight exponent of the local inequality"),
        "norm": Option(convert=str, default="euclid", help="norm of the local inequality: euclid, lp:r=3, weighted:weights=1;2;3"),
        "nodes": Option(convert=int, default=33, help="nodes per axis of the discrete local check (N <= 3)"),
        "s": Option(convert=float, default=0.5, help="fractional order"),
        "sweep": Option(convert=int, default=0, help="number of betas in the C(beta) sweep; 0 skips it"),
        "beta": Option(convert=float, default=None, help="beta of the Monte-Carlo cross-check; defaults to (N - sp) / p"),
        "mc_samples": Option(convert=int, default=0, help="Monte-Carlo samples; 0 skips the cross-check"),
        "csv": Option(convert=str, default=None, help="sweep CSV path (columns: beta, C_beta, error_estimate)"),
    },
}

_CHOICES = {
    "format": ALLOWED_FORMATS,
    "log_level": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
    "energy": ["local", "nonlocal"],
    "solver": ["convex_descent", "power_iteration"],
    "step_rule": ["accelerated", "diminishing"],
    "mode": ["local", "fractional"],
}

_AT_LEAST = {"trials": 1, "dim": 1, "nodes": 3, "max_iterations": 1, "sweep": 0, "mc_samples": 0, "N": 1}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one run, defaults resolved."""

    subcommand: str
    params: dict
    seed: int
    output: str | None
    output_format: str
    log_level: str
    include_timing: bool
    config_file: str | None = None
    explicit: frozenset = frozenset()

    def describe(self) -> dict:
        """Configuration echo for reports."""
        return {
            "subcommand": self.subcommand,
            "seed": self.seed,
            "format": self.output_format,
            "include_timing": self.include_timing,
            "params": dict(self.params),
        }


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises ToolkitError instead of exiting on bad input."""

    def error(self, message: str):  # type: ignore[override]
        raise custom_error.ToolkitError(summary="ConfigError", message=message)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _add_options(parser: argparse.ArgumentParser, options: dict[str, Option]) -> None:
    for name, option in options.items():
        help_text = f"{option.help} (default: {option.default})"
        if option.flag:
            parser.add_argument(_flag(name=name), dest=name, action="store_true", help=help_text)
        else:
            parser.add_argument(_flag(name=name), dest=name, type=option.convert, help=help_text)


def build_parser() -> ArgumentParser:
    """Parser with one subparser per subcommand. Flags carry no argparse defaults, so only given flags appear."""
    parser = ArgumentParser(
        prog="cli_app.py",
        description="Convexity principles, nonlinear eigenvalues and sharp Hardy constants.",
        argument_default=argparse.SUPPRESS,
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for subcommand in ALLOWED_SUBCOMMANDS:
        subparser = subparsers.add_parser(subcommand, argument_default=argparse.SUPPRESS)
        subparser.add_argument("--config", dest="config", type=str, help="key=value file; flags override it")
        _add_options(parser=subparser, options={**SHARED_OPTIONS, **SUBCOMMAND_OPTIONS[subcommand]})
    return parser


def read_config_file(path: str, options: dict[str, Option]) -> dict[str, Any]:
    """
    Reads key=value lines; '#' starts a comment and keys may use '-' or '_'.
    Raises ToolkitError (ConfigError) for unreadable files, malformed lines, unknown keys and bad values.
    """
    try:
        with open(file=path, mode="r", encoding="utf-8") as file:
            lines = file.readlines()
    except OSError as e:
        raise custom_error.ToolkitError(summary="ConfigError", message=f"Cannot read config file {path}: {e}.") from e

    values: dict[str, Any] = {}
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise custom_error.ToolkitError(
                summary="ConfigError",
                message=f"{path}:{number}: expected key=value, got '{line}'.",
            )
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in options:
            raise custom_error.ToolkitError(
                summary="ConfigError",
                message=f"{path}:{number}: unknown key '{key}'. Please choose one from '{list(options)}'.",
            )
        try:
            values[key] = options[key].convert(value)
        except ValueError as e:
            raise custom_error.ToolkitError(
                summary="ConfigError",
                message=f"{path}:{number}: invalid value for {key}: {value}.",
            ) from e
    log.debug(msg=f"Config file {path} sets {sorted(values)}.")
    return values


def validate_values(values: dict[str, Any]) -> None:
    """Checks choices and lower bounds of resolved values. Raises ToolkitError (ConfigError)."""
    for key, choices in _CHOICES.items():
        if key in values and values[key] not in choices:
            raise custom_error.ToolkitError(
                summary="ConfigError",
                message=f"{key} is not correct. Please choose one from '{choices}'.",
                context={key: values[key]},
            )
    for key, lowest in _AT_LEAST.items():
        if key in values and values[key] < lowest:
            raise custom_error.ToolkitError(
                summary="ConfigError",
                message=f"{key} must be at least {lowest}, got {values[key]}.",
                context={key: values[key]},
            )
    if "principle" in values and values["principle"] != "all":
        for principle in values["principle"].split(","):
            if principle.strip() not in config.VERIFY_PRINCIPLES:
                raise custom_error.ToolkitError(
                    summary="ConfigError",
                    message=f"Principle '{principle.strip()}' is not correct. Please choose one from '{config.VERIFY_PRINCIPLES}'.",
                )
    if not 0 <= values["seed"] <= 2**64 - 1:
        raise custom_error.ToolkitError(summary="ConfigError", message=f"seed must be in [0, 2**64 - 1], got {values['seed']}.")


def main(argv: list[str]) -> RunConfig:
    """
    Resolves the run configuration.

    Parameters:
        argv (list[str]): command-line arguments without the program name

    Returns:
        RunConfig: effective configuration; precedence is flags > config file > defaults

    Raises:
        ToolkitError: ConfigError for unknown flags, malformed files and out-of-range values
    """
    namespace = vars(build_parser().parse_args(args=argv))
    subcommand = namespace.pop("subcommand")
    config_file = namespace.pop("config", None)
    options = {**SHARED_OPTIONS, **SUBCOMMAND_OPTIONS[subcommand]}

    values = {name: option.default for name, option in options.items()}
    from_file = {} if config_file is None else read_config_file(path=config_file, options=options)
    values.update(from_file)
    if namespace.get("include_timing") is False:
        namespace.pop("include_timing")
    values.update(namespace)
    validate_values(values=values)

    shared = {name: values.pop(name) for name in SHARED_OPTIONS}
    run_config = RunConfig(
        subcommand=subcommand,
        params=values,
        seed=int(shared["seed"]),
        output=shared["output"],
        output_format=shared["format"],
        log_level=str(shared["log_level"]).upper(),
        include_timing=bool(shared["include_timing"]),
        config_file=config_file,
        explicit=frozenset(namespace) | frozenset(from_file),
    )
    log.debug(msg=f"Resolved run configuration: {run_config.describe()}.")
    return run_config
