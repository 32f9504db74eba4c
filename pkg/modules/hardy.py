"""
Local (general norm, power weight) and fractional Hardy constants.

The fractional constant of |x|^(-beta) is reduced to a one-dimensional integral of the spherical kernel Phi,
evaluated by adaptive quadrature and cross-checked against an importance-sampled Monte-Carlo estimate of the
N-dimensional integral and, for p = 2, a closed form.
"""
import dataclasses
import functools
import logging
import math

import numpy as np
from scipy import optimize, special

from . import eigen, hfun
from .grid import Grid, GridFunction
from .utilities import config, custom_error, streams
from .utilities.quadrature import QuadratureConfig, integrate

log = logging.getLogger(name="log." + __name__)

# Phi switches to the logarithmic angle substitution when |1 - rho| drops below this
NEAR_DIAGONAL = 0.05


@dataclasses.dataclass(frozen=True)
class LocalParams:
    """Dimension N, exponent 1 < p < N, weight exponent gamma > p - N and the norm F (its dual F* weighs x)."""

    N: int
    p: float
    gamma: float
    norm: hfun.NormPair = dataclasses.field(default_factory=hfun.NormPair.euclid)

    def __post_init__(self) -> None:
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise custom_error.ToolkitError(summary="ParameterError", message=f"N must be an integer >= 1, got {self.N}.")
        if not 1.0 < self.p < self.N:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Local Hardy inequality needs 1 < p < N, got p={self.p}, N={self.N}.",
            )
        if not self.gamma > self.p - self.N:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Local Hardy inequality needs gamma > p - N = {self.p - self.N}, got {self.gamma}.",
            )
        if self.norm.kind == hfun.NormKind.WEIGHTED and len(self.norm.weights) != self.N:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Weighted norm has {len(self.norm.weights)} weights in dimension {self.N}.",
            )

    @property
    def excess(self) -> float:
        """N + gamma - p."""
        return self.N + self.gamma - self.p

    def describe(self) -> dict:
        return {"N": int(self.N), "p": self.p, "gamma": self.gamma, "norm": self.norm.describe()}


@dataclasses.dataclass(frozen=True)
class FractionalParams:
    """Dimension N >= 2, order 0 < s < 1 and exponent p > 1 with sp < N."""

    N: int
    s: float
    p: float

    def __post_init__(self) -> None:
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 2):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Fractional Hardy constants need N >= 2, got N={self.N}.",
            )
        if not (0.0 < self.s < 1.0 and self.p > 1.0):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Fractional Hardy constants need 0 < s < 1 and p > 1, got s={self.s}, p={self.p}.",
            )
        if not self.sp < self.N:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Fractional Hardy constants need sp < N, got sp={self.sp}, N={self.N}.",
            )

    @property
    def sp(self) -> float:
        return self.s * self.p

    @property
    def optimal_beta(self) -> float:
        """(N - sp) / p."""
        return (self.N - self.sp) / self.p

    @property
    def beta_limit(self) -> float:
        """(N - sp) / (p - 1), the end of the range where C(beta) > 0."""
        return (self.N - self.sp) / (self.p - 1.0)

    def describe(self) -> dict:
        return {"N": int(self.N), "s": self.s, "p": self.p}


@dataclasses.dataclass(frozen=True)
class HardyReport:
    params: dict
    betas: list[float]
    values: list[float]
    errors: list[float]
    argmax_beta: float
    sharp_constant: float
    oracle: dict | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def sphere_area(k: int) -> float:
    """Area of the unit sphere S^k in R^(k+1); S^0 has two points."""
    return 2.0 * math.pi ** ((k + 1) / 2) / special.gamma((k + 1) / 2)


# local inequality


def local_sharp_constant(lp: LocalParams) -> float:
    """((N + gamma - p) / p)^p."""
    return (lp.excess / lp.p) ** lp.p


def beta_polynomial(beta: float, lp: LocalParams) -> float:
    """beta^(p-1) (N - beta p + beta - p + gamma); its maximum over beta > 0 is the sharp local constant."""
    if not beta > 0:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"beta must be positive, got {beta}.")
    return beta ** (lp.p - 1) * (lp.excess - beta * (lp.p - 1))


def argmax_beta(lp: LocalParams) -> float:
    """Maximizer of beta_polynomial over (0, (N+gamma-p)/(p-1)): golden-section search polished by a root
    of the derivative (p-1) beta^(p-2) (N + gamma - p - p beta)."""
    upper = lp.excess / (lp.p - 1)
    bracket = (1e-6 * upper, 0.5 * upper, (1 - 1e-6) * upper)
    found = optimize.minimize_scalar(
        lambda beta: -beta_polynomial(beta=beta, lp=lp), bracket=bracket, method="golden", tol=1e-10
    )
    beta = float(found.x)

    def slope(b: float) -> float:
        return (lp.p - 1) * b ** (lp.p - 2) * (lp.excess - lp.p * b)

    low, high = max(beta - 1e-3 * upper, bracket[0]), min(beta + 1e-3 * upper, bracket[2])
    if slope(low) > 0 > slope(high):
        beta = optimize.brentq(slope, low, high, xtol=1e-14, rtol=1e-14)
    log.debug(msg=f"beta polynomial maximal at {beta} for {lp.describe()}.")
    return beta


def _forward_cells(grid: Grid, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward-difference gradients on every cell and the coordinates of the cell centers."""
    padded = np.pad(values, pad_width=1)
    base = (slice(0, grid.nodes - 1),) * grid.dimension
    gradients = []
    for k in range(grid.dimension):
        cells = tuple(slice(1, grid.nodes) if axis == k else slice(0, grid.nodes - 1) for axis in range(grid.dimension))
        gradients.append((padded[cells] - padded[base]) / grid.h)
    centers_axis = grid.origin + grid.h * (np.arange(grid.nodes - 1) + 0.5)
    centers = np.stack(np.meshgrid(*([centers_axis] * grid.dimension), indexing="ij"), axis=-1)
    return np.stack(gradients, axis=-1), centers


def _support(grid: Grid, v: GridFunction) -> tuple[np.ndarray, np.ndarray]:
    if v.grid != grid:
        raise custom_error.ToolkitError(summary="DimensionMismatch", message="Test function lives on another grid.")
    values = v.values
    if not np.any(values != 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Hardy ratio of the zero function.")
    coordinates = grid.coordinates()
    at_origin = np.all(coordinates == 0, axis=-1)
    if np.any(values[at_origin] != 0):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message="Test function must vanish at the origin node.",
        )
    return values, coordinates


def local_hardy_check(lp: LocalParams, v: GridFunction) -> float:
    """
    Discrete Hardy ratio sum F(D_h v)^p F*(x_c)^gamma h^N / sum |v|^p F*(x)^(gamma-p) h^N, with gradients on
    cells evaluated at cell centers and the potential term on nodes where v != 0.

    Raises:
        ToolkitError: DimensionMismatch if the grid dimension is not N, ParameterError if v = 0 or v(0) != 0
    """
    grid = v.grid
    if grid.dimension != lp.N:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Grid of dimension {grid.dimension} for N={lp.N}.",
        )
    values, coordinates = _support(grid=grid, v=v)
    gradients, centers = _forward_cells(grid=grid, values=values)
    kinetic = np.sum(lp.norm.primal(x=gradients) ** lp.p * lp.norm.dual(z=centers) ** lp.gamma)

    nonzero = values != 0
    potential = np.sum(np.abs(values[nonzero]) ** lp.p * lp.norm.dual(z=coordinates[nonzero]) ** (lp.gamma - lp.p))
    ratio = float(kinetic / potential)
    log.debug(msg=f"Local Hardy ratio {ratio:.6f} against constant {local_sharp_constant(lp=lp):.6f}.")
    return ratio


def annular_bump(grid: Grid, r_inner: float, r_outer: float) -> GridFunction:
    """Smooth radial bump exp(-1 / ((r - a)(b - r))) supported in a < |x| < b, scaled to maximum 1."""
    if not 0 < r_inner < r_outer:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Annulus needs 0 < r_inner < r_outer, got {r_inner}, {r_outer}.",
        )
    radius = np.linalg.norm(grid.coordinates(), axis=-1)
    inside = (radius > r_inner) & (radius < r_outer)
    product = np.where(inside, (radius - r_inner) * (r_outer - radius), 1.0)
    values = np.where(inside, np.exp(-1.0 / product), 0.0)
    if not np.any(values > 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Annulus contains no grid node.")
    return GridFunction(grid=grid, values=values / values.max())


def extremal_profile(grid: Grid, lp: LocalParams, r_inner: float, r_outer: float) -> GridFunction:
    """
    Ground-state profile F*(x)^(-(N+gamma-p)/p) times sin(pi (log F*(x) - log a) / log(b/a)) on a < F*(x) < b.
    Its Hardy ratio decreases towards the sharp constant as log(b/a) grows.
    """
    if not 0 < r_inner < r_outer:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Cutoff needs 0 < r_inner < r_outer, got {r_inner}, {r_outer}.",
        )
    radius = lp.norm.dual(z=grid.coordinates())
    inside = (radius > r_inner) & (radius < r_outer)
    safe = np.where(inside, radius, 1.0)
    cutoff = np.sin(math.pi * np.log(safe / r_inner) / math.log(r_outer / r_inner))
    values = np.where(inside, safe ** (-lp.excess / lp.p) * cutoff, 0.0)
    return GridFunction(grid=grid, values=values)


# fractional inequality


@functools.lru_cache(maxsize=65536)
def _phi(rho: float, delta: float, N: int, sp: float, qc: QuadratureConfig) -> tuple[float, float]:
    """Phi(rho) and its error estimate for any rho >= 0 with delta = |1 - rho| > 0 supplied accurately."""
    decay = (N + sp) / 2
    area = sphere_area(k=N - 2)

    if not qc.substitute_theta:
        # t = cos(theta) with the (1 - t^2)^((N-3)/2) factor handled as an algebraic weight
        def in_t(t: float) -> float:
            return (delta**2 + 2 * rho * (1 - t)) ** (-decay)

        value, error = integrate(
            func=in_t, lower=-1.0, upper=1.0, qc=qc, weight="alg", wvar=((N - 3) / 2, (N - 3) / 2)
        )
        return area * value, area * error

    def in_theta(theta: float) -> float:
        return math.sin(theta) ** (N - 2) * (delta**2 + 4 * rho * math.sin(theta / 2) ** 2) ** (-decay)

    if delta >= NEAR_DIAGONAL:
        value, error = integrate(func=in_theta, lower=0.0, upper=math.pi, qc=qc)
    else:
        # theta = e^w resolves the peak of width |1 - rho| at theta = 0
        def in_log_theta(w: float) -> float:
            theta = math.exp(w)
            return in_theta(theta) * theta

        value, error = integrate(func=in_log_theta, lower=math.log(delta) - config.TAU_DECAY, upper=math.log(math.pi), qc=qc)
    return area * value, area * error


def phi_kernel(rho: float, fp: FractionalParams, qc: QuadratureConfig) -> float:
    """
    Phi(rho) = |S^(N-2)| int_0^pi sin^(N-2)(theta) (1 - 2 rho cos(theta) + rho^2)^(-(N+sp)/2) dtheta.

    Raises:
        ToolkitError: ParameterError for rho outside [0, 1), QuadratureError if the integral fails
    """
    if not 0.0 <= rho < 1.0:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Phi needs 0 <= rho < 1, got {rho}.")
    return _phi(rho=float(rho), delta=1.0 - float(rho), N=int(fp.N), sp=float(fp.sp), qc=qc)[0]


def phi_inversion_gap(r: float, fp: FractionalParams, qc: QuadratureConfig) -> float:
    """|Phi(1/r) - r^(N+sp) Phi(r)| / (r^(N+sp) Phi(r)), with Phi continued to r > 1 by the same integral."""
    if not (r > 0 and r != 1):
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Inversion needs r > 0, r != 1, got {r}.")
    direct = _phi(rho=1.0 / r, delta=abs(1.0 - 1.0 / r), N=int(fp.N), sp=float(fp.sp), qc=qc)[0]
    scaled = r ** (fp.N + fp.sp) * _phi(rho=float(r), delta=abs(float(r) - 1.0), N=int(fp.N), sp=float(fp.sp), qc=qc)[0]
    return abs(direct - scaled) / scaled


def g_function(beta: float, rho: float | np.ndarray, fp: FractionalParams) -> np.ndarray:
    """[1 - rho^(N-sp-beta(p-1))] [1 - rho^beta]^(p-1) on 0 < rho < 1, pointwise maximal at beta = (N-sp)/p."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0) or np.any(rho >= 1):
        raise custom_error.ToolkitError(summary="ParameterError", message="G needs 0 < rho < 1.")
    return (1 - rho ** (fp.N - fp.sp - beta * (fp.p - 1))) * (1 - rho**beta) ** (fp.p - 1)


def _one_minus_power(log_rho: float, exponent: float) -> float:
    return -math.expm1(exponent * log_rho)


def _c_of_beta(beta: float, fp: FractionalParams, qc: QuadratureConfig) -> tuple[float, float]:
    if not beta > 0:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"C(beta) needs beta > 0, got {beta}.")
    N, sp, p = int(fp.N), float(fp.sp), float(fp.p)
    bracket_exponent = N - sp - beta * (p - 1)
    # for beta > (N-sp)/(p-1) the bracket grows like -rho^(bracket_exponent) and joins the endpoint weight
    shift = min(bracket_exponent, 0.0)
    if sp - 1.0 + shift <= -1.0:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"C(beta) diverges for beta >= N/(p-1) = {N / (p - 1)}, got {beta}.",
        )

    def body(rho: float, log_rho: float, gap: float) -> float:
        first = _one_minus_power(log_rho=log_rho, exponent=bracket_exponent)
        second = abs(_one_minus_power(log_rho=log_rho, exponent=beta)) ** (p - 1)
        return 2.0 * first * second * _phi(rho=rho, delta=gap, N=N, sp=sp, qc=qc)[0]

    def near_integrand(rho: float) -> float:
        if rho == 0.0:
            return 2.0 * math.copysign(1.0, bracket_exponent) * (bracket_exponent != 0) * _phi(rho=0.0, delta=1.0, N=N, sp=sp, qc=qc)[0]
        log_rho = math.log(rho)
        return body(rho=rho, log_rho=log_rho, gap=1.0 - rho) * math.exp(-shift * log_rho)

    # rho in [0, 1/2]: the rho^(sp-1) endpoint factor is an algebraic weight
    near, near_error = integrate(
        func=near_integrand, lower=0.0, upper=0.5, qc=qc, weight="alg", wvar=(sp - 1.0 + shift, 0.0)
    )

    # rho = 1 - e^(-tau) on [1/2, 1): the integrand decays like e^(-p(1-s) tau)
    def in_tau(tau: float) -> float:
        gap = math.exp(-tau)
        rho = -math.expm1(-tau)
        return body(rho=rho, log_rho=math.log1p(-gap), gap=gap) * rho ** (sp - 1.0) * gap

    def in_rho(rho: float) -> float:
        if rho >= 1.0:
            return 0.0
        return body(rho=rho, log_rho=math.log(rho), gap=1.0 - rho) * rho ** (sp - 1.0)

    if qc.substitute_tau:
        tau_max = max(config.TAU_DECAY, config.TAU_DECAY / (p * (1.0 - fp.s)))
        far, far_error = integrate(func=in_tau, lower=math.log(2.0), upper=tau_max, qc=qc)
    else:
        far, far_error = integrate(func=in_rho, lower=0.5, upper=1.0, qc=qc)
    return near + far, near_error + far_error


def c_of_beta(beta: float, fp: FractionalParams, qc: QuadratureConfig) -> float:
    """
    C(beta) = 2 int_0^1 rho^(sp-1) [1 - rho^(N-sp-beta(p-1))] |1 - rho^beta|^(p-1) Phi(rho) drho,
    the constant with (-Delta_p)^s |x|^(-beta) = C(beta) |x|^(-beta(p-1)-sp).

    Raises:
        ToolkitError: ParameterError for beta <= 0, QuadratureError if an integral fails
    """
    return _c_of_beta(beta=beta, fp=fp, qc=qc)[0]


def sharp_fractional_constant(fp: FractionalParams, qc: QuadratureConfig) -> float:
    """C((N - sp) / p), the sharp constant of the fractional Hardy inequality."""
    value = c_of_beta(beta=fp.optimal_beta, fp=fp, qc=qc)
    log.info(msg=f"Sharp fractional Hardy constant for {fp.describe()}: {value:.12g}.")
    return value


def quadratic_fractional_constant(N: int, s: float) -> float:
    """Closed form of the sharp constant for p = 2:
    (2 / C_{N,s}) 2^(2s) Gamma((N+2s)/4)^2 / Gamma((N-2s)/4)^2 with C_{N,s} = s 2^(2s) Gamma((N+2s)/2) / (pi^(N/2) Gamma(1-s))."""
    fp = FractionalParams(N=N, s=s, p=2.0)
    normalization = s * 4**s * special.gamma((N + 2 * s) / 2) / (math.pi ** (N / 2) * special.gamma(1 - s))
    ratio = special.gamma((N + 2 * s) / 4) / special.gamma((N - 2 * s) / 4)
    log.debug(msg=f"Closed-form constant for {fp.describe()}.")
    return float(2.0 / normalization * 4**s * ratio**2)


def beta_sweep(fp: FractionalParams, points: int, qc: QuadratureConfig, threads: int = config.THREADS) -> HardyReport:
    """
    Evaluates C(beta) on `points` equally spaced betas strictly inside (0, (N-sp)/(p-1)).

    Returns:
        HardyReport: betas, values, error estimates, the grid argmax and the sharp constant
    """
    if points < 1:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Sweep needs at least one point, got {points}.")
    betas = [fp.beta_limit * k / (points + 1) for k in range(1, points + 1)]

    def worker(index: int, _: int) -> tuple[float, float]:
        return _c_of_beta(beta=betas[index], fp=fp, qc=qc)

    evaluated = streams.map_batches(worker=worker, total=points, batch_size=1, threads=threads)
    values = [value for value, _ in evaluated]
    errors = [error for _, error in evaluated]
    sharp = sharp_fractional_constant(fp=fp, qc=qc)
    return HardyReport(
        params=fp.describe(),
        betas=betas,
        values=values,
        errors=errors,
        argmax_beta=betas[int(np.argmax(values))],
        sharp_constant=sharp,
    )


def _radial_proposal(rng: np.random.Generator, size: int, dim: int, scale: float, near_exponent: float, tail_exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Samples h = r omega with r from a half/half mixture of scale U^(1/a) on [0, scale] and a Pareto tail on
    [scale, inf); returns h and its density in R^dim."""
    near = rng.uniform(size=size) < 0.5
    uniform = rng.uniform(size=size)
    radius = np.where(near, scale * uniform ** (1.0 / near_exponent), scale * (1.0 - uniform) ** (-1.0 / tail_exponent))
    radial_density = np.where(
        near,
        0.5 * near_exponent * radius ** (near_exponent - 1.0) / scale**near_exponent,
        0.5 * tail_exponent * scale**tail_exponent * radius ** (-tail_exponent - 1.0),
    )
    direction = rng.standard_normal(size=(size, dim))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    density = radial_density / (sphere_area(k=dim - 1) * radius ** (dim - 1))
    return radius[:, None] * direction, density


def montecarlo_oracle(
    beta: float, fp: FractionalParams, samples: int, seed: int, x: np.ndarray | None = None, first_stream: int = 0
) -> tuple[float, float]:
    """
    Importance-sampled estimate of 2 int J_p(u(x) - u(x+h)) |h|^(-N-sp) dh for u = |y|^(-beta) at x (default e_1).
    At |x| = 1 this is C(beta); in general it is C(beta) |x|^(beta(1-p)-sp).

    The integrand is symmetrized over (h, -h), which cancels the first-order singularity at h = 0, and h is drawn
    from a radial mixture concentrated near 0 with a Pareto tail of index sp.

    Parameters:
        beta (float): exponent of the power function, > 0
        fp (FractionalParams): N, s, p
        samples (int): number of draws, at least config.MC_MIN_SAMPLES
        seed (int): user seed
        x (np.ndarray | None, optional): evaluation point. Defaults to e_1.
        first_stream (int, optional): index of the first random stream; estimates on disjoint streams are independent

    Returns:
        tuple[float, float]: estimate and standard error

    Raises:
        ToolkitError: SamplingError for too few samples, ParameterError for beta <= 0 or x = 0
    """
    if samples < config.MC_MIN_SAMPLES:
        raise custom_error.ToolkitError(
            summary="SamplingError",
            message=f"Monte-Carlo oracle needs at least {config.MC_MIN_SAMPLES} samples, got {samples}.",
        )
    if not beta > 0:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"beta must be positive, got {beta}.")
    N, sp, p = int(fp.N), float(fp.sp), float(fp.p)
    x = np.eye(N)[0] if x is None else hfun.as_vector(z=x, dimension=N)
    norm_x = float(np.linalg.norm(x))
    if norm_x == 0:
        raise custom_error.ToolkitError(summary="ParameterError", message="The evaluation point must not be 0.")
    value_x = norm_x ** (-beta)
    near_exponent = min(1.0, p * (1.0 - fp.s))

    def drop(h: np.ndarray) -> np.ndarray:
        # u(x) - u(x + h) without cancellation: u(x + h) / u(x) = (|x + h|^2 / |x|^2)^(-beta/2)
        relative = (2.0 * (h @ x) + np.sum(h**2, axis=-1)) / norm_x**2
        return -value_x * np.expm1(-0.5 * beta * np.log1p(relative))

    def worker(index: int, size: int) -> tuple[float, float]:
        rng = streams.generator(seed=seed, stream=first_stream + index)
        h, density = _radial_proposal(rng=rng, size=size, dim=N, scale=norm_x, near_exponent=near_exponent, tail_exponent=sp)
        kernel = np.linalg.norm(h, axis=-1) ** (-N - sp)
        forward, backward = drop(h=h), drop(h=-h)
        symmetric = (np.sign(forward) * np.abs(forward) ** (p - 1) + np.sign(backward) * np.abs(backward) ** (p - 1)) * kernel
        weighted = symmetric / density
        return float(np.sum(weighted)), float(np.sum(weighted**2))

    sums = streams.map_batches(worker=worker, total=samples, batch_size=config.MC_BATCH_SIZE)
    total = sum(first for first, _ in sums)
    squares = sum(second for _, second in sums)
    mean = total / samples
    variance = max(squares / samples - mean**2, 0.0)
    error = math.sqrt(variance / samples)
    log.debug(msg=f"Monte-Carlo C({beta}) at |x|={norm_x}: {mean:.8f} +- {error:.2e} over {samples} samples.")
    return mean, error


def rotated_unit_point(N: int) -> np.ndarray:
    """(1, ..., 1) / sqrt(N), a rotation of e_1 for N >= 2."""
    return np.ones(N) / math.sqrt(N)


def montecarlo_radiality(
    beta: float, fp: FractionalParams, samples: int, seed: int, reference: tuple[float, float] | None = None
) -> tuple[float, float, float]:
    """
    Repeats the Monte-Carlo estimate at a rotated unit point on independent streams and compares it with the
    estimate at e_1.

    Parameters:
        beta (float): exponent of the power function, > 0
        fp (FractionalParams): N, s, p
        samples (int): number of draws per estimate
        seed (int): user seed
        reference (tuple[float, float] | None, optional): estimate and standard error at e_1; sampled when omitted

    Returns:
        tuple[float, float, float]: rotated estimate, its standard error, and |difference| in combined standard errors
    """
    if reference is None:
        reference = montecarlo_oracle(beta=beta, fp=fp, samples=samples, seed=seed)
    estimate, error = montecarlo_oracle(
        beta=beta, fp=fp, samples=samples, seed=seed, x=rotated_unit_point(N=int(fp.N)), first_stream=config.MC_ROTATED_STREAM
    )
    combined = math.hypot(reference[1], error)
    distance = abs(estimate - reference[0]) / combined if combined > 0 else 0.0
    log.debug(msg=f"Monte-Carlo radiality at beta={beta}: {estimate:.8f} against {reference[0]:.8f} ({distance:.2f} SE).")
    return estimate, error, distance


def fractional_hardy_check(fp: FractionalParams, grid: Grid, v: GridFunction) -> float:
    """
    Discrete fractional Hardy ratio: truncated Gagliardo energy of v over sum |v_i|^p |x_i|^(-sp) h^N.

    Raises:
        ToolkitError: DimensionMismatch if the grid dimension is not N, ParameterError if v = 0 or v(0) != 0
    """
    if grid.dimension != fp.N:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Grid of dimension {grid.dimension} for N={fp.N}.",
        )
    values, coordinates = _support(grid=grid, v=v)
    energy, _ = eigen.gagliardo_energy(grid=grid, s=fp.s, p=fp.p, u=v)
    nonzero = values != 0
    potential = np.sum(np.abs(values[nonzero]) ** fp.p * np.linalg.norm(coordinates[nonzero], axis=-1) ** (-fp.sp))
    ratio = float(energy / (potential * grid.cell_volume))
    log.debug(msg=f"Fractional Hardy ratio {ratio:.6f} on {grid.nodes} nodes per axis.")
    return ratio


def fractional_hardy_refinement(
    fp: FractionalParams,
    resolutions: tuple[int, ...] = (33, 65, 129),
    extent: float = 2.0,
    r_inner: float = 0.25,
    r_outer: float = 0.9,
    qc: QuadratureConfig | None = None,
) -> list[dict]:
    """
    Fractional Hardy ratios of the same annular bump on centered grids of increasing resolution.

    Each row holds nodes per axis, spacing h, the ratio and gap = sharp constant - ratio. The lattice sum misses
    the near-diagonal part of the energy, so the ratio grows and the gap shrinks as h decreases.
    """
    constant = sharp_fractional_constant(fp=fp, qc=qc or QuadratureConfig())
    rows = []
    for nodes in resolutions:
        grid = Grid.centered(dimension=fp.N, extent=extent, nodes=nodes)
        ratio = fractional_hardy_check(fp=fp, grid=grid, v=annular_bump(grid=grid, r_inner=r_inner, r_outer=r_outer))
        rows.append({"nodes": nodes, "h": grid.h, "ratio": ratio, "gap": constant - ratio})
    log.info(msg=f"Refinement gaps to the sharp constant {constant:.8f}: {[row['gap'] for row in rows]}.")
    return rows
