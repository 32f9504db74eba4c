"""Unit tests for modules.grid.py"""
import numpy as np

from modules.grid import Grid, GridFunction
from . import context


class TestGrid(context.BaseTestCase):
    """Tests for Grid class."""

    def test_geometry(self) -> None:
        """Test spacing, interior shape, size and cell volume."""
        grid = Grid(dimension=2, extent=1.0, nodes=5)
        self.assertAlmostEqual(first=grid.h, second=0.25, places=15)
        self.assertEqual(first=grid.shape, second=(3, 3))
        self.assertEqual(first=grid.size, second=9)
        self.assertAlmostEqual(first=grid.cell_volume, second=0.0625, places=15)

    def test_axis_and_coordinates(self) -> None:
        """Test interior coordinates exclude the boundary."""
        grid = Grid(dimension=2, extent=1.0, nodes=5)
        np.testing.assert_allclose(actual=grid.axis(), desired=[0.25, 0.5, 0.75])
        coordinates = grid.coordinates()
        self.assertEqual(first=coordinates.shape, second=(3, 3, 2))
        np.testing.assert_allclose(actual=coordinates[0, 2], desired=[0.25, 0.75])

    def test_centered_origin_node(self) -> None:
        """Test an odd centered grid has a node at the origin."""
        grid = Grid.centered(dimension=3, extent=2.0, nodes=9)
        origin_nodes = np.all(grid.coordinates() == 0, axis=-1)
        self.assertEqual(first=int(origin_nodes.sum()), second=1)

    def test_invalid(self) -> None:
        """Test too few nodes, dimension 0 and negative extent raise ParameterError."""
        self.assertRaisesSummary(self.error_parameter_error, Grid, dimension=1, extent=1.0, nodes=2)
        self.assertRaisesSummary(self.error_parameter_error, Grid, dimension=0, extent=1.0, nodes=5)
        self.assertRaisesSummary(self.error_parameter_error, Grid, dimension=1, extent=-1.0, nodes=5)

    def test_describe(self) -> None:
        """Test describe echoes the constructor arguments."""
        self.assertEqual(
            first=Grid(dimension=1, extent=2.0, nodes=7).describe(),
            second={"dimension": 1, "extent": 2.0, "nodes": 7, "origin": 0.0},
        )


class TestGridFunction(context.BaseTestCase):
    """Tests for GridFunction class."""

    def test_flat_values_reshaped(self) -> None:
        """Test flat values take the interior shape."""
        grid = Grid(dimension=2, extent=1.0, nodes=4)
        function = GridFunction(grid=grid, values=np.arange(4.0))
        self.assertEqual(first=function.values.shape, second=(2, 2))

    def test_size_mismatch(self) -> None:
        """Test a wrong number of values raises DimensionMismatch."""
        grid = Grid(dimension=2, extent=1.0, nodes=4)
        self.assertRaisesSummary(self.error_dimension_mismatch, GridFunction, grid=grid, values=np.ones(5))

    def test_non_finite(self) -> None:
        """Test NaN values raise ParameterError."""
        grid = Grid(dimension=1, extent=1.0, nodes=4)
        self.assertRaisesSummary(self.error_parameter_error, GridFunction, grid=grid, values=np.array([1.0, np.nan]))

    def test_padded_and_scaled(self) -> None:
        """Test zero boundary padding and scaling."""
        grid = Grid(dimension=1, extent=1.0, nodes=4)
        function = GridFunction(grid=grid, values=np.array([1.0, 2.0]))
        np.testing.assert_array_equal(x=function.padded(), y=[0.0, 1.0, 2.0, 0.0])
        np.testing.assert_array_equal(x=function.scaled(factor=3.0).values, y=[3.0, 6.0])

    def test_from_function(self) -> None:
        """Test sampling a function of the coordinates."""
        grid = Grid(dimension=2, extent=1.0, nodes=5)
        function = GridFunction.from_function(grid=grid, func=lambda x: x[..., 0] + 10 * x[..., 1])
        self.assertAlmostEqual(first=float(function.values[1, 2]), second=0.5 + 7.5, places=12)
