"""Adaptive quadrature wrapper around QUADPACK with toolkit error reporting."""
import dataclasses
import logging
import math
from typing import Callable

from scipy.integrate import quad

from . import config, custom_error

log = logging.getLogger(name="log." + __name__)

# unusable QUADPACK outcomes, keyed by a fragment of the warning text (infodict carries no ier)
_FATAL_MESSAGES = {
    "maximum number of subdivisions": "maximum number of subdivisions reached",
    "bad integrand behavior": "extremely bad integrand behavior",
    "divergent": "integral is divergent",
    "input is invalid": "invalid input",
}


def fatal_condition(message: str) -> str | None:
    """Returns the fatal QUADPACK condition named in a warning message, or None for a recoverable one."""
    text = " ".join(message.split()).lower()
    for fragment, condition in _FATAL_MESSAGES.items():
        if fragment in text:
            return condition
    return None


@dataclasses.dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and endpoint-substitution switches for every integral in the toolkit."""

    epsabs: float = config.QUAD_EPSABS
    epsrel: float = config.QUAD_EPSREL
    limit: int = config.QUAD_LIMIT
    substitute_theta: bool = True
    substitute_tau: bool = True

    def __post_init__(self) -> None:
        if not (self.epsabs > 0 and self.epsrel > 0):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Quadrature tolerances must be positive, got epsabs={self.epsabs}, epsrel={self.epsrel}.",
            )
        if self.limit < 1:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Quadrature subdivision limit must be at least 1, got {self.limit}.",
            )

    def halved(self) -> "QuadratureConfig":
        """Returns the same configuration with both tolerances halved."""
        return dataclasses.replace(self, epsabs=self.epsabs / 2, epsrel=self.epsrel / 2)


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    qc: QuadratureConfig,
    weight: str | None = None,
    wvar: tuple[float, float] | None = None,
) -> tuple[float, float]:
    """
    Integrates func over [lower, upper] with adaptive Gauss-Kronrod bisection.

    Parameters:
        func (Callable[[float], float]): scalar integrand
        lower (float): lower limit
        upper (float): upper limit
        qc (QuadratureConfig): tolerances and subdivision limit
        weight (str | None, optional): QUADPACK weight, e.g. "alg" for algebraic endpoint singularities
        wvar (tuple[float, float] | None, optional): exponents for the "alg" weight

    Returns:
        tuple[float, float]: integral value and absolute error estimate

    Raises:
        ToolkitError: QuadratureError if QUADPACK reports a fatal condition or the error estimate is unusable
    """
    kwargs = {}
    if weight is not None:
        kwargs = {"weight": weight, "wvar": wvar}

    result = quad(func, lower, upper, epsabs=qc.epsabs, epsrel=qc.epsrel, limit=qc.limit, full_output=1, **kwargs)
    value, abserr = result[0], result[1]

    if len(result) > 3:
        condition = fatal_condition(message=str(result[3]))
        if condition is not None or not math.isfinite(value):
            raise custom_error.ToolkitError(
                summary="QuadratureError",
                message=f"Integral over [{lower}, {upper}] failed: {condition or 'non-finite estimate'}.",
                context={"lower": lower, "upper": upper, "estimate": value, "error": abserr},
            )
        # roundoff and extrapolation warnings are accepted when the estimate is still usable
        if abserr > math.sqrt(qc.epsrel) * abs(value) + 1e3 * qc.epsabs:
            raise custom_error.ToolkitError(
                summary="QuadratureError",
                message=f"Integral over [{lower}, {upper}] did not reach tolerance: estimate {value}, error {abserr}.",
            )
        log.debug(msg=f"Accepted QUADPACK warning on [{lower}, {upper}]: {result[3]} (error {abserr:.3e}).")

    return value, abserr
