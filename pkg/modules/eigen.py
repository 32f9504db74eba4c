"""
Discrete local and nonlocal energies on grids and the first (p, q) eigenvalue problem.

The Euler-Lagrange equation of the discrete problem reads (1/p) dE/du_i = lambda u_i^(q-1) h^d, so at a minimizer
normalized by sum u^q h^d = 1 the eigenvalue equals the energy.
"""
import csv
import dataclasses
import enum
import functools
import itertools
import logging
import math
from typing import Iterator

import numpy as np
from scipy import linalg, sparse
from scipy.sparse import linalg as sparse_linalg

from . import hfun
from .grid import Grid, GridFunction
from .utilities import config, custom_error, projection

log = logging.getLogger(name="log." + __name__)


class EnergyKind(str, enum.Enum):
    LOCAL = "local"
    NONLOCAL = "nonlocal"


class SolverKind(str, enum.Enum):
    CONVEX_DESCENT = "convex_descent"
    POWER_ITERATION = "power_iteration"


class StepRule(str, enum.Enum):
    """Step selection of the convex descent: accelerated projected gradient with backtracking and restart,
    or plain projected subgradient steps c0 / sqrt(k)."""

    ACCELERATED = "accelerated"
    DIMINISHING = "diminishing"


def _values_of(grid: Grid, u: GridFunction | np.ndarray) -> np.ndarray:
    if isinstance(u, GridFunction):
        if u.grid != grid:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Function lives on {u.grid.describe()}, expected {grid.describe()}.",
            )
        return u.values
    return GridFunction(grid=grid, values=u).values


def _validate_fractional(s: float, p: float) -> None:
    if not (0.0 < s < 1.0 and p > 1.0):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Gagliardo energy needs 0 < s < 1 and p > 1, got s={s}, p={p}.",
        )


def _cell_slices(dimension: int, nodes: int) -> tuple[tuple[slice, ...], list[tuple[slice, ...]]]:
    """Lower corners of all cells and, per axis, the neighbor one step forward."""
    base = (slice(0, nodes - 1),) * dimension
    forward = [
        tuple(slice(1, nodes) if axis == k else slice(0, nodes - 1) for axis in range(dimension))
        for k in range(dimension)
    ]
    return base, forward


def local_energy(grid: Grid, H: hfun.HomogeneousForm, u: GridFunction | np.ndarray) -> tuple[float, GridFunction]:
    """
    Discrete Dirichlet energy sum over cells of H(D_h u) h^d with forward-difference cell gradients.

    Parameters:
        grid (Grid): grid with zero boundary values
        H (HomogeneousForm): integrand of the grid's dimension
        u (GridFunction | np.ndarray): interior values

    Returns:
        tuple[float, GridFunction]: energy and its exact gradient with respect to the interior values

    Raises:
        ToolkitError: DimensionMismatch if H and the grid disagree
    """
    if H.dimension != grid.dimension:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Form of dimension {H.dimension} on a grid of dimension {grid.dimension}.",
        )
    padded = np.pad(_values_of(grid=grid, u=u), pad_width=1)
    base, forward = _cell_slices(dimension=grid.dimension, nodes=grid.nodes)
    gradients = np.stack([(padded[cells] - padded[base]) / grid.h for cells in forward], axis=-1)

    value = float(np.sum(hfun.eval_H(H=H, z=gradients))) * grid.cell_volume
    derivative = hfun.grad_H(H=H, z=gradients) * grid.h ** (grid.dimension - 1)
    scattered = np.zeros_like(padded)
    for k, cells in enumerate(forward):
        scattered[cells] += derivative[..., k]
        scattered[base] -= derivative[..., k]
    interior = (slice(1, -1),) * grid.dimension
    return value, GridFunction(grid=grid, values=scattered[interior])


class GagliardoKernel:
    """
    Pair weights |x_i - x_j|^(-d-sp) between interior nodes, and for every interior node the tail sum of the
    weights towards all exterior lattice nodes of the box reaching one extent beyond the domain.
    """

    def __init__(self, grid: Grid, s: float, p: float) -> None:
        _validate_fractional(s=s, p=p)
        self.grid = grid
        self.s = s
        self.p = p
        self.exponent = grid.dimension + s * p
        interior = grid.nodes - 2
        self.indices = np.stack(
            np.meshgrid(*([np.arange(interior)] * grid.dimension), indexing="ij"), axis=-1
        ).reshape(-1, grid.dimension)
        self.table = self._kernel_table(axis_offsets=np.arange(interior))
        self.tail = self._tail_sums()
        self.rows_per_chunk = max(1, config.PAIR_CHUNK_ELEMENTS // grid.size)
        self._dense = None
        if grid.size <= self.rows_per_chunk:
            self._dense = self.rows(chunk=slice(0, grid.size))
        log.debug(msg=f"Gagliardo kernel for s={s}, p={p} on {grid.size} nodes (dense={self._dense is not None}).")

    def _kernel_table(self, axis_offsets: np.ndarray) -> np.ndarray:
        mesh = np.meshgrid(*([axis_offsets.astype(float)] * self.grid.dimension), indexing="ij")
        squared = sum(offset**2 for offset in mesh)
        with np.errstate(divide="ignore"):
            table = (self.grid.h * np.sqrt(squared)) ** (-self.exponent)
        table[squared == 0] = 0.0
        return table

    @staticmethod
    def _box_sums(summed: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        """Sums of the table over the inclusive index boxes [lower, upper] from its zero-padded prefix sums."""
        total = np.zeros(lower.shape[0])
        dimension = lower.shape[1]
        for corner in itertools.product((0, 1), repeat=dimension):
            index = tuple(upper[:, k] + 1 if high else lower[:, k] for k, high in enumerate(corner))
            total += (-1) ** (dimension - sum(corner)) * summed[index]
        return total

    def _tail_sums(self) -> np.ndarray:
        n = self.grid.nodes
        reach = 2 * n - 3
        summed = self._kernel_table(axis_offsets=np.arange(-reach, reach + 1))
        for axis in range(self.grid.dimension):
            summed = np.cumsum(summed, axis=axis)
        summed = np.pad(summed, pad_width=[(1, 0)] * self.grid.dimension)

        nodes = self.indices + 1
        box = self._box_sums(summed=summed, lower=reach - (n - 1) - nodes, upper=reach + 2 * (n - 1) - nodes)
        inner = self._box_sums(summed=summed, lower=reach + 1 - nodes, upper=reach + (n - 2) - nodes)
        return box - inner

    def rows(self, chunk: slice) -> np.ndarray:
        """Interior pair weights for the rows in `chunk` against all interior nodes."""
        if self._dense is not None:
            return self._dense[chunk]
        delta = np.abs(self.indices[chunk, None, :] - self.indices[None, :, :])
        return self.table[tuple(delta[..., k] for k in range(self.grid.dimension))]

    def chunks(self) -> Iterator[slice]:
        for start in range(0, self.grid.size, self.rows_per_chunk):
            yield slice(start, min(start + self.rows_per_chunk, self.grid.size))

    def matrix(self) -> np.ndarray:
        return self.rows(chunk=slice(0, self.grid.size))

    def energy(self, values: np.ndarray) -> tuple[float, np.ndarray]:
        u = values.ravel()
        p = self.p
        value = 0.0
        gradient = np.empty_like(u)
        for chunk in self.chunks():
            difference = u[chunk, None] - u[None, :]
            magnitude = np.abs(difference)
            weights = self.rows(chunk=chunk)
            value += float(np.sum(magnitude**p * weights))
            gradient[chunk] = 2 * p * np.sum(np.sign(difference) * magnitude ** (p - 1) * weights, axis=1)
        size = np.abs(u)
        value += 2 * float(np.sum(size**p * self.tail))
        gradient += 2 * p * np.sign(u) * size ** (p - 1) * self.tail
        factor = self.grid.h ** (2 * self.grid.dimension)
        return value * factor, (gradient * factor).reshape(self.grid.shape)


@functools.lru_cache(maxsize=8)
def gagliardo_kernel(grid: Grid, s: float, p: float) -> GagliardoKernel:
    return GagliardoKernel(grid=grid, s=s, p=p)


def gagliardo_energy(grid: Grid, s: float, p: float, u: GridFunction | np.ndarray) -> tuple[float, GridFunction]:
    """
    Truncated discrete Gagliardo energy: interior pairs sum_{i != j} |u_i - u_j|^p w_ij h^(2d) plus twice the
    pairs of interior nodes with the exterior lattice nodes (where u = 0) within one extent of the domain.

    Parameters:
        grid (Grid): grid with zero boundary values
        s (float): fractional order in (0, 1)
        p (float): exponent > 1
        u (GridFunction | np.ndarray): interior values

    Returns:
        tuple[float, GridFunction]: energy and its exact gradient with respect to the interior values

    Raises:
        ToolkitError: ParameterError if s or p is out of range
    """
    _validate_fractional(s=s, p=p)
    values = _values_of(grid=grid, u=u)
    value, gradient = gagliardo_kernel(grid=grid, s=float(s), p=float(p)).energy(values=values)
    return value, GridFunction(grid=grid, values=gradient)


def lq_norm(grid: Grid, u: GridFunction | np.ndarray, q: float) -> float:
    """(sum |u_i|^q h^d)^(1/q). Raises ToolkitError for q < 1."""
    if q < 1:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"L^q norm needs q >= 1, got {q}.")
    values = _values_of(grid=grid, u=u)
    return float(np.sum(np.abs(values) ** q) * grid.cell_volume) ** (1.0 / q)


@dataclasses.dataclass(frozen=True)
class EigenProblem:
    """First eigenvalue problem: minimize the energy over {u >= 0, ||u||_q = 1} on a grid."""

    grid: Grid
    energy: EnergyKind
    q: float
    H: hfun.HomogeneousForm | None = None
    s: float | None = None
    p: float | None = None
    solver: SolverKind = SolverKind.CONVEX_DESCENT
    tolerance: float = config.EIGEN_TOLERANCE
    max_iterations: int = config.EIGEN_MAX_ITERATIONS
    step_rule: StepRule = StepRule.ACCELERATED

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "energy", EnergyKind(self.energy))
            object.__setattr__(self, "solver", SolverKind(self.solver))
            object.__setattr__(self, "step_rule", StepRule(self.step_rule))
        except ValueError as e:
            raise custom_error.ToolkitError(summary="UnsupportedKind", message=str(e)) from e

        if self.energy == EnergyKind.LOCAL:
            if self.H is None or self.H.dimension != self.grid.dimension:
                raise custom_error.ToolkitError(
                    summary="DimensionMismatch",
                    message=f"Local energy needs a form of the grid's dimension {self.grid.dimension}.",
                )
            if self.p is not None and self.p != self.H.degree:
                raise custom_error.ToolkitError(
                    summary="ParameterError",
                    message=f"p={self.p} disagrees with the degree {self.H.degree} of {self.H.describe()}.",
                )
            object.__setattr__(self, "p", self.H.degree)
        else:
            _validate_fractional(s=self.s if self.s is not None else -1.0, p=self.p if self.p is not None else -1.0)

        if not 1.0 < self.q <= self.p:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"The eigenvalue problem needs 1 < q <= p, got p={self.p}, q={self.q}.",
            )
        if self.solver == SolverKind.POWER_ITERATION:
            quadratic = self.p == 2.0 and self.q == 2.0
            if self.energy == EnergyKind.LOCAL:
                quadratic = quadratic and self.H.quadratic
            if not quadratic:
                raise custom_error.ToolkitError(
                    summary="UnsupportedKind",
                    message="Power iteration needs p = q = 2 and a quadratic energy.",
                )
        if not (self.tolerance > 0 and self.max_iterations >= 1):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Solver needs tolerance > 0 and max_iterations >= 1, got {self.tolerance}, {self.max_iterations}.",
            )

    @classmethod
    def local(cls, grid: Grid, H: hfun.HomogeneousForm, q: float, **kwargs) -> "EigenProblem":
        return cls(grid=grid, energy=EnergyKind.LOCAL, q=float(q), H=H, **kwargs)

    @classmethod
    def nonlocal_(cls, grid: Grid, s: float, p: float, q: float, **kwargs) -> "EigenProblem":
        return cls(grid=grid, energy=EnergyKind.NONLOCAL, q=float(q), s=float(s), p=float(p), **kwargs)

    @property
    def subcritical(self) -> bool:
        """sp < d for nonlocal energies; recorded only, the bounded-domain problem does not need it."""
        return self.energy == EnergyKind.NONLOCAL and self.s * self.p < self.grid.dimension

    def evaluate(self, values: np.ndarray) -> tuple[float, np.ndarray]:
        """Energy and gradient as plain arrays."""
        if self.energy == EnergyKind.LOCAL:
            value, gradient = local_energy(grid=self.grid, H=self.H, u=values)
        else:
            value, gradient = gagliardo_energy(grid=self.grid, s=self.s, p=self.p, u=values)
        return value, gradient.values

    def describe(self) -> dict:
        described = {"energy": self.energy.value, "p": self.p, "q": self.q, "solver": self.solver.value}
        if self.energy == EnergyKind.LOCAL:
            described["H"] = self.H.describe()
        else:
            described["s"] = self.s
            described["subcritical"] = self.subcritical
        return described


@dataclasses.dataclass(frozen=True, eq=False)
class EigenResult:
    lam: float
    eigenfunction: GridFunction
    residual: float
    iterations: int
    energy_trace: np.ndarray
    converged: bool
    solver: SolverKind

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "solver": self.solver.value,
        }


def _residual(problem: EigenProblem, lam: float, values: np.ndarray) -> float:
    _, gradient = problem.evaluate(values=values)
    forcing = np.abs(values) ** (problem.q - 1) * problem.grid.cell_volume
    return float(np.max(np.abs(gradient / problem.p - lam * forcing)) / (lam * np.max(forcing)))


def _window_converged(trace: list[float], problem: EigenProblem) -> bool:
    if len(trace) <= config.EIGEN_WINDOW:
        return False
    return abs(trace[-1 - config.EIGEN_WINDOW] - trace[-1]) <= problem.tolerance * abs(trace[-1])


def _convex_descent(problem: EigenProblem) -> tuple[float, np.ndarray, int, list[float], bool]:
    """Minimizes E(rho^(1/q)) over {rho >= 0, sum rho h^d = 1}, which is convex in rho."""
    grid = problem.grid
    q = problem.q
    mass = 1.0 / grid.cell_volume

    def objective(rho: np.ndarray) -> tuple[float, np.ndarray]:
        u = np.maximum(rho, 0.0) ** (1.0 / q)
        value, gradient = problem.evaluate(values=u)
        floor = 1e-8 * max(float(u.max()), np.finfo(float).tiny)
        return value, gradient / (q * np.maximum(u, floor) ** (q - 1))

    x = np.full(grid.shape, mass / grid.size)
    fx, gx = objective(x)
    trace = [fx]
    converged = False
    iteration = 0

    if problem.step_rule == StepRule.DIMINISHING:
        c0 = fx * grid.cell_volume
        best, best_value = x, fx
        # trace holds the best energy so far; the stopping window watches the current iterate
        current = [fx]
        for iteration in range(1, problem.max_iterations + 1):
            x = projection.project_to_simplex(y=x - c0 / math.sqrt(iteration) * gx, total=mass)
            fx, gx = objective(x)
            if fx < best_value:
                best, best_value = x, fx
            trace.append(best_value)
            current.append(fx)
            if _window_converged(trace=current, problem=problem):
                converged = True
                break
        return best_value, best, iteration, trace, converged

    y, fy, gy = x, fx, gx
    momentum = 1.0
    lipschitz = max(float(np.linalg.norm(gx) / np.linalg.norm(x)), 1e-12)
    for iteration in range(1, problem.max_iterations + 1):
        while True:
            z = projection.project_to_simplex(y=y - gy / lipschitz, total=mass)
            fz, gz = objective(z)
            step = z - y
            if fz <= fy + float(np.sum(gy * step)) + 0.5 * lipschitz * float(np.sum(step**2)) + 1e-15 * abs(fy):
                break
            lipschitz *= 2.0
            if not math.isfinite(lipschitz) or lipschitz > 1e300:
                raise custom_error.ToolkitError(
                    summary="ConvergenceError",
                    message="Backtracking could not find a descent step.",
                )

        if fz > fx:
            # restart from the last accepted iterate
            y, fy, gy, momentum = x, fx, gx, 1.0
        else:
            following = (1.0 + math.sqrt(1.0 + 4.0 * momentum**2)) / 2.0
            y = z + ((momentum - 1.0) / following) * (z - x)
            x, fx, gx, momentum = z, fz, gz, following
            fy, gy = objective(y)
        lipschitz *= 0.9
        trace.append(fx)
        if iteration % 1000 == 0:
            log.debug(msg=f"Convex descent iteration {iteration}: energy {fx:.12e}.")
        if _window_converged(trace=trace, problem=problem):
            converged = True
            break
    return fx, x, iteration, trace, converged


def _quadratic_operator(problem: EigenProblem) -> sparse.csr_matrix | np.ndarray:
    """Matrix K with u^T K u = E(u) for quadratic energies."""
    grid = problem.grid
    n, d, h = grid.nodes, grid.dimension, grid.h
    if problem.energy == EnergyKind.NONLOCAL:
        kernel = gagliardo_kernel(grid=grid, s=float(problem.s), p=2.0)
        weights = kernel.matrix()
        return 2 * h ** (2 * d) * (np.diag(weights.sum(axis=1) + kernel.tail) - weights)

    difference = sparse.diags([-1.0, 1.0], [0, 1], shape=(n - 1, n)).tocsr()[:, 1 : n - 1] / h
    selection = sparse.eye(n - 1, n, format="csr")[:, 1 : n - 1]
    operator = sparse.csr_matrix((grid.size, grid.size))
    for k, weight in enumerate(problem.H.quadratic_weights()):
        factors = [difference if axis == k else selection for axis in range(d)]
        derivative = functools.reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)
        operator = operator + weight * (derivative.T @ derivative)
    return (operator * grid.cell_volume).tocsr()


def _power_iteration(problem: EigenProblem) -> tuple[float, np.ndarray, int, list[float], bool]:
    """Inverse power iteration for the smallest eigenvalue of K u = lambda h^d u."""
    grid = problem.grid
    operator = _quadratic_operator(problem=problem)
    if sparse.issparse(operator):
        solve = sparse_linalg.splu(operator.tocsc()).solve
    else:
        factor = linalg.cho_factor(operator)

        def solve(rhs: np.ndarray) -> np.ndarray:
            return linalg.cho_solve(factor, rhs)

    x = np.ones(grid.size) / math.sqrt(grid.size)
    trace: list[float] = []
    converged = False
    iteration = 0
    for iteration in range(1, config.POWER_MAX_ITERATIONS + 1):
        y = solve(x)
        x = y / np.linalg.norm(y)
        image = operator @ x
        lam = float(x @ image) / grid.cell_volume
        trace.append(lam)
        # same scale as the Euler-Lagrange residual
        forcing = lam * grid.cell_volume * x
        if np.max(np.abs(image - forcing)) <= config.POWER_TOLERANCE * np.max(np.abs(forcing)):
            converged = True
            break
    x = x * np.sign(x.sum())
    return lam, x.reshape(grid.shape), iteration, trace, converged


def solve_eigen(problem: EigenProblem) -> EigenResult:
    """
    Solves the first eigenvalue problem with the problem's solver.

    Parameters:
        problem (EigenProblem): grid, energy, q and solver settings

    Returns:
        EigenResult: eigenvalue, eigenfunction with ||u||_q = 1, Euler-Lagrange residual, iterations, trace and
            a convergence flag (the best iterate is returned when the iteration budget runs out)
    """
    log.info(msg=f"Solving {problem.describe()} on {problem.grid.describe()}.")
    if problem.solver == SolverKind.POWER_ITERATION:
        lam, values, iterations, trace, converged = _power_iteration(problem=problem)
    else:
        lam, rho, iterations, trace, converged = _convex_descent(problem=problem)
        values = np.maximum(rho, 0.0) ** (1.0 / problem.q)

    values = np.maximum(values, 0.0)
    values = values / lq_norm(grid=problem.grid, u=values, q=problem.q)
    if problem.solver == SolverKind.CONVEX_DESCENT:
        lam = problem.evaluate(values=values)[0]
    if not converged:
        log.warning(msg=f"{problem.solver.value} stopped after {iterations} iterations without converging.")

    result = EigenResult(
        lam=float(lam),
        eigenfunction=GridFunction(grid=problem.grid, values=values),
        residual=_residual(problem=problem, lam=float(lam), values=values),
        iterations=iterations,
        energy_trace=np.asarray(trace),
        converged=converged,
        solver=problem.solver,
    )
    log.info(msg=f"lambda = {result.lam:.12g} after {iterations} iterations (residual {result.residual:.3e}).")
    return result


def residual_euler_lagrange(problem: EigenProblem, result: EigenResult) -> float:
    """max_i |(1/p) dE/du_i - lambda u_i^(q-1) h^d| relative to lambda max_i u_i^(q-1) h^d."""
    return _residual(problem=problem, lam=result.lam, values=result.eigenfunction.values)


def rayleigh_quotient(problem: EigenProblem, u: GridFunction | np.ndarray) -> float:
    """E(u) / ||u||_q^p, invariant under rescaling u."""
    values = _values_of(grid=problem.grid, u=u)
    norm = lq_norm(grid=problem.grid, u=values, q=problem.q)
    if norm == 0:
        raise custom_error.ToolkitError(summary="ParameterError", message="Rayleigh quotient of the zero function.")
    return problem.evaluate(values=values)[0] / norm**problem.p


def scaling_identity_check(lam: float, u: GridFunction | np.ndarray, problem: EigenProblem) -> float:
    """
    Relative defect of mu(u) (sum u^q h^d)^((q-p)/q) = lambda for an eigenfunction u of arbitrary normalization,
    where mu(u) is the eigenvalue measured from the Euler-Lagrange equation summed over all nodes:
    mu(u) = sum_i (1/p) dE/du_i / sum_i u_i^(q-1) h^d.

    The sum tests the equation against the constant function, so mu(u) is not the Rayleigh quotient and the
    defect only vanishes when u solves the equation.

    Parameters:
        lam (float): first eigenvalue lambda_pq, e.g. EigenResult.lam
        u (GridFunction | np.ndarray): non-negative, non-trivial function, any normalization
        problem (EigenProblem): supplies p, q, the grid and the energy

    Returns:
        float: |mu(u) (sum u^q h^d)^((q-p)/q) - lambda| / lambda

    Raises:
        ToolkitError: ParameterError for negative or trivial u, or non-positive lambda
    """
    values = _values_of(grid=problem.grid, u=u)
    if np.any(values < 0) or not np.any(values > 0):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message="The scaling identity needs a non-negative, non-trivial function.",
        )
    if not lam > 0:
        raise custom_error.ToolkitError(
            summary="ParameterError", message=f"The scaling identity needs lambda > 0, got {lam}.", context={"lambda": lam}
        )
    _, gradient = problem.evaluate(values=values)
    measured = float(np.sum(gradient) / problem.p) / float(np.sum(values ** (problem.q - 1)) * problem.grid.cell_volume)
    mass = float(np.sum(values**problem.q) * problem.grid.cell_volume)
    return abs(measured * mass ** ((problem.q - problem.p) / problem.q) - lam) / lam


def positivity_check(result: EigenResult) -> tuple[float, bool]:
    """Smallest interior value of the eigenfunction and whether it is strictly positive."""
    smallest = float(np.min(result.eigenfunction.values))
    return smallest, smallest > 0


def symmetry_defect(result: EigenResult) -> float:
    values = result.eigenfunction.values
    return float(max(np.max(np.abs(values - np.flip(values, axis=axis))) for axis in range(values.ndim)))


def write_eigenfunction_csv(result: EigenResult, path: str) -> None:
    """Writes one row per interior node: coordinates x0..x{d-1} and the value."""
    grid = result.eigenfunction.grid
    coordinates = grid.coordinates().reshape(-1, grid.dimension)
    with open(file=path, mode="w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file)
        writer.writerow([f"x{k}" for k in range(grid.dimension)] + ["value"])
        for point, value in zip(coordinates, result.eigenfunction.values.ravel()):
            writer.writerow([f"{c:.17g}" for c in point] + [f"{value:.17g}"])
    log.info(msg=f"Eigenfunction written to {path}.")
