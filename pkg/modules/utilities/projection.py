"""Euclidean projection onto the scaled probability simplex."""
import logging

import numpy as np

from . import custom_error

log = logging.getLogger(name="log." + __name__)


def project_to_simplex(y: np.ndarray, total: float = 1.0) -> np.ndarray:
    """
    Projects y onto {x >= 0, sum(x) = total} by the sort-and-shift algorithm.

    Parameters:
        y (np.ndarray): point to project, any shape (flattened internally)
        total (float, optional): simplex mass. Defaults to 1.0.

    Returns:
        np.ndarray: projection with the shape of y

    Raises:
        ToolkitError: ParameterError if total is not positive or y is not finite
    """
    if not total > 0:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Simplex mass must be positive, got {total}.",
        )
    flat = np.asarray(y, dtype=float).ravel()
    if not np.all(np.isfinite(flat)):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message="Cannot project a point with non-finite entries onto the simplex.",
        )

    descending = np.sort(flat)[::-1]
    shifts = (np.cumsum(descending) - total) / np.arange(1, flat.size + 1)
    k = np.nonzero(shifts < descending)[0][-1]
    return np.clip(flat - shifts[k], a_min=0.0, a_max=None).reshape(np.shape(y))
