"""Uniform rectangular grids with homogeneous Dirichlet boundary and nodal functions on their interior."""
import dataclasses
import logging
from typing import Callable

import numpy as np

from .utilities import custom_error

log = logging.getLogger(name="log." + __name__)


@dataclasses.dataclass(frozen=True)
class Grid:
    """
    Cube [origin, origin + extent]^dimension with `nodes` nodes per axis, boundary nodes included.
    Functions vanish on the boundary nodes and outside the cube.
    """

    dimension: int
    extent: float
    nodes: int
    origin: float = 0.0

    def __post_init__(self) -> None:
        if not (isinstance(self.dimension, (int, np.integer)) and self.dimension >= 1):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Grid dimension must be an integer >= 1, got {self.dimension}.",
            )
        if not (isinstance(self.nodes, (int, np.integer)) and self.nodes >= 3):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Grid needs at least 3 nodes per axis (one interior node), got {self.nodes}.",
            )
        if not (self.extent > 0 and np.isfinite(self.extent) and np.isfinite(self.origin)):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Grid extent must be positive and finite, got extent={self.extent}, origin={self.origin}.",
            )

    @classmethod
    def centered(cls, dimension: int, extent: float, nodes: int) -> "Grid":
        """Cube centered at the origin; an odd node count puts the origin on a node."""
        return cls(dimension=dimension, extent=float(extent), nodes=nodes, origin=-float(extent) / 2)

    @property
    def h(self) -> float:
        return self.extent / (self.nodes - 1)

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the interior node array."""
        return (self.nodes - 2,) * self.dimension

    @property
    def size(self) -> int:
        return (self.nodes - 2) ** self.dimension

    @property
    def cell_volume(self) -> float:
        return self.h**self.dimension

    def axis(self) -> np.ndarray:
        """Interior node coordinates along one axis."""
        return self.origin + self.h * np.arange(1, self.nodes - 1)

    def coordinates(self) -> np.ndarray:
        """Interior node coordinates with shape grid.shape + (dimension,)."""
        mesh = np.meshgrid(*([self.axis()] * self.dimension), indexing="ij")
        return np.stack(mesh, axis=-1)

    def describe(self) -> dict:
        return {"dimension": int(self.dimension), "extent": self.extent, "nodes": int(self.nodes), "origin": self.origin}


@dataclasses.dataclass(frozen=True, eq=False)
class GridFunction:
    """Nodal values on the interior nodes of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.size != self.grid.size:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Grid has {self.grid.size} interior nodes, got {values.size} values.",
            )
        if not np.all(np.isfinite(values)):
            raise custom_error.ToolkitError(summary="ParameterError", message="Grid function values must be finite.")
        object.__setattr__(self, "values", values.reshape(self.grid.shape))

    @classmethod
    def zeros(cls, grid: Grid) -> "GridFunction":
        return cls(grid=grid, values=np.zeros(grid.shape))

    @classmethod
    def from_function(cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> "GridFunction":
        """Samples func, which maps coordinates of shape (..., dimension) to values of shape (...)."""
        return cls(grid=grid, values=func(grid.coordinates()))

    def padded(self) -> np.ndarray:
        """Values on all nodes, boundary zeros included."""
        return np.pad(self.values, pad_width=1)

    def scaled(self, factor: float) -> "GridFunction":
        return GridFunction(grid=self.grid, values=factor * self.values)
