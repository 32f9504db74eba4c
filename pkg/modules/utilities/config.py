"""Holds environmental variables and toolkit constants. Sets up custom logger."""

import logging
import os

log = logging.getLogger(name="log")

# declare environment constants

THREADS: int = max(1, int(os.environ.get("CONVEXITY_THREADS", "1")))
LOG_LEVEL: str = os.environ.get("CONVEXITY_LOG_LEVEL", "INFO").upper()

TOOL_VERSION = "1.0.0"
SCHEMA_VERSION = 1

ALLOWED_SUBCOMMANDS = ["verify", "eigen", "hardy"]
ALLOWED_FORMATS = ["json", "csv"]

# property sweeps
GAP_TOLERANCE = 1e-12
SWEEP_BATCH_SIZE = 10_000
GRADIENT_RANGE = (-10.0, 10.0)
VALUE_RANGE = (1e-3, 10.0)
VERIFY_PRINCIPLES = [
    "homogeneity",
    "euler",
    "gradient",
    "magic",
    "root-power",
    "kinetic",
    "hidden",
    "picone",
    "weak-picone",
    "discrete-picone",
    "discrete-hidden",
    "elementary",
    "derivative",
    "fisher",
    "anisotropic-picone",
    "counterexample-beta",
    "counterexample-q",
]

# eigen solver
EIGEN_TOLERANCE = 1e-9
EIGEN_WINDOW = 50
EIGEN_MAX_ITERATIONS = 100_000
POWER_TOLERANCE = 1e-10
POWER_MAX_ITERATIONS = 1_000
PAIR_CHUNK_ELEMENTS = 4_000_000

# quadrature
QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 10_000
TAU_DECAY = 40.0
MC_MIN_SAMPLES = 10_000
MC_BATCH_SIZE = 100_000
# streams of the rotated-point estimate start here, past any batch index of the e_1 estimate
MC_ROTATED_STREAM = 1 << 32


def logger(
    logging_format: str = "%(levelname)s, %(name)s.%(funcName)s: %(message)s",
    level: int | str = logging.INFO,
) -> None:
    """
    Sets up custom logger.

    Parameters:
        logging_format (str, optional): Logging format. Defaults to "%(levelname)s, %(name)s.%(funcName)s: %(message)s".
        level (int | str, optional): Logging level. Defaults to logging.INFO.

    Returns:
        None
    """
    log.debug(msg="Setting up custom logger.")

    log.setLevel(level=level)

    handler = logging.StreamHandler(stream=None)

    formatter = logging.Formatter(fmt=logging_format)
    handler.setFormatter(fmt=formatter)

    if log.hasHandlers():
        log.handlers.clear()

    log.addHandler(hdlr=handler)
