"""Error type shared by the toolkit; its summary names one of the fixed error kinds below."""
import logging
from typing import Any

log = logging.getLogger(name="log." + __name__)

SUMMARIES = frozenset(
    {
        "ConfigError",
        "ConvergenceError",
        "DimensionMismatch",
        "NoViolation",
        "ParameterError",
        "QuadratureError",
        "SamplingError",
        "TypeError",
        "UnsupportedKind",
    }
)


class ToolkitError(Exception):
    """Raised for invalid parameters and failed numerics; main writes it into the report instead of a traceback.

    Parameters:
        summary (str): one of SUMMARIES
        message (str): human-readable detail
        context (dict | None): offending parameter values, copied into the report error field

    Raises:
        ValueError: for a summary outside SUMMARIES
    """

    message: str
    summary: str
    context: dict[str, Any]
    repr: str

    def __init__(self, summary: str, message: str, context: dict[str, Any] | None = None) -> None:
        if summary not in SUMMARIES:
            raise ValueError(f"Unknown error summary {summary!r}.")
        self.summary = summary
        self.message = message
        self.context = dict(context or {})
        self.repr = f"{self.summary}: {self.message}"
        super().__init__(self.message)
        log.error(msg=self.repr, stacklevel=2)

    def __repr__(self) -> str:
        return self.repr

    def to_dict(self) -> dict[str, Any]:
        """Report error field: {"error": summary, "message": message} plus "context" when given."""
        field: dict[str, Any] = {"error": self.summary, "message": self.message}
        if self.context:
            field["context"] = self.context
        return field
