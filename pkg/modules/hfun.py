"""Homogeneous convex integrands and norm / dual-norm pairs with exact gradients.

Every evaluator works on the last axis of its argument, so a batch of vectors of shape (..., N)
is evaluated in one call.
"""
import dataclasses
import enum
import logging
import math
import re

import numpy as np

from .utilities import custom_error

log = logging.getLogger(name="log." + __name__)

_DESCRIPTOR = re.compile(r"^\s*(?P<name>[a-z_]+)\s*(?:\((?P<paren>.*)\)|:(?P<colon>.*))?\s*$")


class NormKind(str, enum.Enum):
    """Built-in norms with closed-form duals."""

    EUCLID = "euclid"
    LP = "lp"
    WEIGHTED = "weighted"


class FormKind(str, enum.Enum):
    """Built-in homogeneous (or per-coordinate homogeneous) integrands."""

    POWER_EUCLID = "power_euclid"
    POWER_NORM = "power_norm"
    ANISOTROPIC = "anisotropic"


def as_vector(z: np.ndarray | list | tuple, dimension: int) -> np.ndarray:
    """Converts z to a float array whose last axis has length `dimension`.
    Raises ToolkitError on a dimension mismatch or non-finite entries."""
    array = np.asarray(z, dtype=float)
    if array.ndim == 0 or array.shape[-1] != dimension:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Expected vectors of length {dimension}, got array of shape {array.shape}.",
        )
    if not np.all(np.isfinite(array)):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message="Vector entries must be finite.",
        )
    return array


@dataclasses.dataclass(frozen=True)
class NormPair:
    """A norm F together with its dual F*."""

    kind: NormKind
    r: float = 2.0
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == NormKind.LP and not 1.0 <= self.r <= math.inf:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"lp norm needs 1 <= r <= inf, got r={self.r}.",
            )
        if self.kind == NormKind.WEIGHTED:
            if not self.weights or any(not (w > 0 and math.isfinite(w)) for w in self.weights):
                raise custom_error.ToolkitError(
                    summary="ParameterError",
                    message=f"Weighted euclidean norm needs positive finite weights, got {self.weights}.",
                )

    @classmethod
    def euclid(cls) -> "NormPair":
        return cls(kind=NormKind.EUCLID)

    @classmethod
    def lp(cls, r: float) -> "NormPair":
        return cls(kind=NormKind.LP, r=float(r))

    @classmethod
    def weighted(cls, weights: list[float] | tuple[float, ...]) -> "NormPair":
        return cls(kind=NormKind.WEIGHTED, weights=tuple(float(w) for w in weights))

    @property
    def dual_exponent(self) -> float:
        """Conjugate exponent r' with 1/r + 1/r' = 1 (lp kind only)."""
        if self.r == 1.0:
            return math.inf
        if self.r == math.inf:
            return 1.0
        return self.r / (self.r - 1.0)

    @property
    def smooth(self) -> bool:
        """True when F is C^1 and strictly convex away from the origin."""
        return self.kind != NormKind.LP or 1.0 < self.r < math.inf

    def describe(self) -> str:
        if self.kind == NormKind.LP:
            return f"lp(r={self.r:g})"
        if self.kind == NormKind.WEIGHTED:
            return "weighted(weights=" + ";".join(f"{w:g}" for w in self.weights) + ")"
        return "euclid"

    def _check_weights(self, x: np.ndarray) -> np.ndarray:
        weights = np.asarray(self.weights, dtype=float)
        if x.shape[-1] != weights.size:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Weighted norm has {weights.size} weights, got vectors of length {x.shape[-1]}.",
            )
        return weights

    def _require_smooth(self) -> None:
        if not self.smooth:
            raise custom_error.ToolkitError(
                summary="UnsupportedKind",
                message=f"Norm {self.describe()} is not C^1; gradients are only available for 1 < r < inf.",
            )

    def primal(self, x: np.ndarray) -> np.ndarray:
        """F(x) along the last axis."""
        x = np.asarray(x, dtype=float)
        if self.kind == NormKind.EUCLID:
            return np.linalg.norm(x, axis=-1)
        if self.kind == NormKind.LP:
            return np.linalg.norm(x, ord=self.r, axis=-1)
        weights = self._check_weights(x=x)
        return np.sqrt(np.sum(weights * x**2, axis=-1))

    def dual(self, z: np.ndarray) -> np.ndarray:
        """F*(z) along the last axis, by closed form."""
        z = np.asarray(z, dtype=float)
        if self.kind == NormKind.EUCLID:
            return np.linalg.norm(z, axis=-1)
        if self.kind == NormKind.LP:
            return np.linalg.norm(z, ord=self.dual_exponent, axis=-1)
        weights = self._check_weights(x=z)
        return np.sqrt(np.sum(z**2 / weights, axis=-1))

    def grad_primal(self, x: np.ndarray) -> np.ndarray:
        """Gradient of F; zero at the origin."""
        self._require_smooth()
        x = np.asarray(x, dtype=float)
        value = self.primal(x=x)[..., None]
        safe = np.where(value > 0, value, 1.0)
        if self.kind == NormKind.EUCLID:
            grad = x / safe
        elif self.kind == NormKind.LP:
            grad = np.sign(x) * (np.abs(x) / safe) ** (self.r - 1.0)
        else:
            grad = self._check_weights(x=x) * x / safe
        return np.where(value > 0, grad, 0.0)

    def grad_dual(self, z: np.ndarray) -> np.ndarray:
        """Gradient of F*; zero at the origin."""
        self._require_smooth()
        z = np.asarray(z, dtype=float)
        value = self.dual(z=z)[..., None]
        safe = np.where(value > 0, value, 1.0)
        if self.kind == NormKind.EUCLID:
            grad = z / safe
        elif self.kind == NormKind.LP:
            grad = np.sign(z) * (np.abs(z) / safe) ** (self.dual_exponent - 1.0)
        else:
            grad = z / self._check_weights(x=z) / safe
        return np.where(value > 0, grad, 0.0)


@dataclasses.dataclass(frozen=True)
class HomogeneousForm:
    """A convex integrand H that is positively homogeneous of degree p
    (per coordinate for the anisotropic kind, whose degree is its smallest exponent)."""

    kind: FormKind
    degree: float
    dimension: int
    norm: NormPair | None = None
    exponents: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (isinstance(self.dimension, (int, np.integer)) and self.dimension >= 1):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Form dimension must be an integer >= 1, got {self.dimension}.",
            )
        if not (self.degree > 1 and math.isfinite(self.degree)):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Form degree must be a finite real > 1, got {self.degree}.",
            )
        if self.kind == FormKind.POWER_NORM:
            if self.norm is None or not self.norm.smooth:
                raise custom_error.ToolkitError(
                    summary="UnsupportedKind",
                    message="power_norm needs a C^1 strictly convex norm (euclid, lp with 1 < r < inf, weighted).",
                )
            if self.norm.kind == NormKind.WEIGHTED and len(self.norm.weights) != self.dimension:
                raise custom_error.ToolkitError(
                    summary="DimensionMismatch",
                    message=f"Weighted norm has {len(self.norm.weights)} weights for a form of dimension {self.dimension}.",
                )
        if self.kind == FormKind.ANISOTROPIC:
            exponents = self.exponents or ()
            if len(exponents) != self.dimension or any(not e > 1 for e in exponents):
                raise custom_error.ToolkitError(
                    summary="ParameterError",
                    message=f"Anisotropic form needs {self.dimension} exponents > 1, got {self.exponents}.",
                )
            if list(exponents) != sorted(exponents) or self.degree != exponents[0]:
                raise custom_error.ToolkitError(
                    summary="ParameterError",
                    message=f"Anisotropic exponents must be non-decreasing with degree = p_1, got {self.exponents}.",
                )

    @classmethod
    def power_euclid(cls, p: float, dim: int) -> "HomogeneousForm":
        return cls(kind=FormKind.POWER_EUCLID, degree=float(p), dimension=int(dim))

    @classmethod
    def power_norm(cls, p: float, pair: NormPair, dim: int) -> "HomogeneousForm":
        return cls(kind=FormKind.POWER_NORM, degree=float(p), dimension=int(dim), norm=pair)

    @classmethod
    def anisotropic(cls, exponents: list[float] | tuple[float, ...]) -> "HomogeneousForm":
        exponents = tuple(float(e) for e in exponents)
        return cls(
            kind=FormKind.ANISOTROPIC,
            degree=min(exponents) if exponents else 0.0,
            dimension=len(exponents),
            exponents=exponents,
        )

    @property
    def homogeneous(self) -> bool:
        """False for the anisotropic kind unless all exponents coincide."""
        return self.kind != FormKind.ANISOTROPIC or len(set(self.exponents)) == 1

    @property
    def quadratic(self) -> bool:
        """True when H is a quadratic form (power iteration applies)."""
        if self.kind == FormKind.ANISOTROPIC:
            return all(e == 2.0 for e in self.exponents)
        return self.degree == 2.0 and (self.norm is None or self.norm.kind != NormKind.LP or self.norm.r == 2.0)

    def describe(self) -> str:
        if self.kind == FormKind.ANISOTROPIC:
            return "anisotropic(exponents=" + ";".join(f"{e:g}" for e in self.exponents) + ")"
        if self.kind == FormKind.POWER_NORM:
            return f"power_norm(p={self.degree:g}, dim={self.dimension}, norm={self.norm.describe()})"
        return f"power_euclid(p={self.degree:g}, dim={self.dimension})"

    def quadratic_weights(self) -> np.ndarray:
        """Diagonal M with H(z) = <z, M z> for quadratic forms."""
        if not self.quadratic:
            raise custom_error.ToolkitError(
                summary="UnsupportedKind",
                message=f"{self.describe()} is not a quadratic form.",
            )
        if self.norm is not None and self.norm.kind == NormKind.WEIGHTED:
            return np.asarray(self.norm.weights, dtype=float)
        return np.ones(self.dimension)


def eval_H(H: HomogeneousForm, z: np.ndarray) -> np.ndarray:
    """
    Evaluates H(z) in closed form along the last axis.

    Parameters:
        H (HomogeneousForm): integrand
        z (np.ndarray): vector(s) of length H.dimension

    Returns:
        np.ndarray: H(z), a 0-d array for a single vector

    Raises:
        ToolkitError: DimensionMismatch if z has the wrong length
    """
    z = as_vector(z=z, dimension=H.dimension)
    if H.kind == FormKind.POWER_EUCLID:
        return np.linalg.norm(z, axis=-1) ** H.degree
    if H.kind == FormKind.POWER_NORM:
        return H.norm.primal(x=z) ** H.degree
    return np.sum(np.abs(z) ** np.asarray(H.exponents), axis=-1)


def grad_H(H: HomogeneousForm, z: np.ndarray) -> np.ndarray:
    """
    Analytic gradient of H along the last axis. Where H(z) = 0 the gradient is the zero vector.

    Parameters:
        H (HomogeneousForm): integrand
        z (np.ndarray): vector(s) of length H.dimension

    Returns:
        np.ndarray: gradient(s) with the shape of z

    Raises:
        ToolkitError: DimensionMismatch if z has the wrong length
    """
    z = as_vector(z=z, dimension=H.dimension)
    p = H.degree
    if H.kind == FormKind.ANISOTROPIC:
        exponents = np.asarray(H.exponents)
        return exponents * np.sign(z) * np.abs(z) ** (exponents - 1.0)

    if H.kind == FormKind.POWER_EUCLID:
        magnitude = np.linalg.norm(z, axis=-1)[..., None]
        direction = np.where(magnitude > 0, z / np.where(magnitude > 0, magnitude, 1.0), 0.0)
    else:
        magnitude = H.norm.primal(x=z)[..., None]
        direction = H.norm.grad_primal(x=z)
    return p * magnitude ** (p - 1.0) * direction


def dual_norm(pair: NormPair, z: np.ndarray) -> np.ndarray:
    """
    Closed-form dual norm F*(z): lp dualizes to lp', weighted euclid to inverse weights.

    Parameters:
        pair (NormPair): built-in norm pair
        z (np.ndarray): vector(s)

    Returns:
        np.ndarray: F*(z)

    Raises:
        ToolkitError: UnsupportedKind for anything that is not a NormPair
    """
    if not isinstance(pair, NormPair):
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message=f"Dual norm is only available for built-in norm pairs, got {type(pair).__name__}.",
        )
    z = np.asarray(z, dtype=float)
    if z.ndim == 0 or not np.all(np.isfinite(z)):
        raise custom_error.ToolkitError(summary="ParameterError", message="Vector entries must be finite.")
    return pair.dual(z=z)


def root_power(H: HomogeneousForm, q: float) -> HomogeneousForm:
    """
    Returns F = H^(q/p), which is q-homogeneous and convex for 1 < q <= p.
    Built-in homogeneous kinds are powers of a norm, so F is the same norm raised to q.

    Raises:
        ToolkitError: ParameterError if q is outside (1, p]; UnsupportedKind for anisotropic forms
    """
    if not 1.0 < q <= H.degree:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"root_power needs 1 < q <= p = {H.degree}, got q={q}.",
        )
    if not H.homogeneous:
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message=f"root_power needs a positively homogeneous form, got {H.describe()}.",
        )
    if H.kind == FormKind.ANISOTROPIC:
        return HomogeneousForm.anisotropic(exponents=[q] * H.dimension)
    return dataclasses.replace(H, degree=float(q))


def norm_pair_checks(pair: NormPair, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Residuals of F(grad F*(x)) = 1, grad F(grad F*(x)) = x / F*(x) and <grad F*(x), x> = F*(x), for x != 0."""
    x = np.asarray(x, dtype=float)
    dual_value = pair.dual(z=x)
    grad_dual = pair.grad_dual(z=x)
    magic = np.abs(pair.primal(x=grad_dual) - 1.0)
    direction = np.max(np.abs(pair.grad_primal(x=grad_dual) - x / dual_value[..., None]), axis=-1)
    euler = np.abs(np.sum(grad_dual * x, axis=-1) - dual_value) / np.maximum(1.0, dual_value)
    return magic, direction, euler


def _parse_params(text: str | None) -> dict[str, str]:
    params: dict[str, str] = {}
    if not text or not text.strip():
        return params
    for item in text.split(","):
        if "=" not in item:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message=f"Descriptor parameter '{item.strip()}' is not of the form key=value.",
            )
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _to_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as e:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Descriptor parameter {key}={value} is not a number.",
        ) from e


def _to_floats(key: str, value: str) -> list[float]:
    return [_to_float(key=key, value=item) for item in value.split(";") if item.strip()]


def parse_norm(descriptor: str) -> NormPair:
    """Parses `euclid`, `lp:r=3`, `lp(r=3)` or `weighted:weights=1;2`."""
    match = _DESCRIPTOR.match(descriptor or "")
    if match is None:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Cannot parse norm '{descriptor}'.")
    name = match.group("name")
    params = _parse_params(text=match.group("paren") or match.group("colon"))
    if name == NormKind.EUCLID.value:
        return NormPair.euclid()
    if name == NormKind.LP.value:
        return NormPair.lp(r=_to_float(key="r", value=params.get("r", "2")))
    if name == NormKind.WEIGHTED.value:
        return NormPair.weighted(weights=_to_floats(key="weights", value=params.get("weights", "")))
    raise custom_error.ToolkitError(
        summary="UnsupportedKind",
        message=f"Unknown norm '{name}'. Please choose one from '{[kind.value for kind in NormKind]}'.",
    )


def parse_form(descriptor: str, dim: int | None = None) -> HomogeneousForm:
    """
    Parses a form descriptor such as `power_euclid(p=2, dim=2)`, `power_euclid:p=2`,
    `power_norm(p=3, norm=lp:r=4)` or `anisotropic:exponents=2;3`.

    Parameters:
        descriptor (str): form descriptor
        dim (int | None, optional): dimension used when the descriptor does not name one

    Returns:
        HomogeneousForm: parsed form

    Raises:
        ToolkitError: UnsupportedKind for unknown kinds, ParameterError for malformed parameters,
            DimensionMismatch when the descriptor and `dim` disagree
    """
    match = _DESCRIPTOR.match(descriptor or "")
    if match is None:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Cannot parse form '{descriptor}'.")
    name = match.group("name")
    body = match.group("paren") or match.group("colon")

    norm_descriptor = None
    if body and "norm=" in body:
        # the norm descriptor may contain ':' and ',' of its own, so it must come last
        body, norm_descriptor = body.split("norm=", 1)
        body = body.rstrip().rstrip(",")
    params = _parse_params(text=body)

    if "dim" in params:
        named_dim = int(_to_float(key="dim", value=params["dim"]))
        if dim is not None and named_dim != dim:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Descriptor names dim={named_dim} but dimension {dim} is required.",
            )
        dim = named_dim

    if name == FormKind.ANISOTROPIC.value:
        form = HomogeneousForm.anisotropic(exponents=_to_floats(key="exponents", value=params.get("exponents", "")))
        if dim is not None and form.dimension != dim:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Anisotropic form has {form.dimension} exponents but dimension {dim} is required.",
            )
        return form

    if dim is None:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Form '{descriptor}' needs a dimension.",
        )
    p = _to_float(key="p", value=params.get("p", "2"))
    if name == FormKind.POWER_EUCLID.value:
        return HomogeneousForm.power_euclid(p=p, dim=dim)
    if name == FormKind.POWER_NORM.value:
        return HomogeneousForm.power_norm(p=p, pair=parse_norm(descriptor=norm_descriptor or "euclid"), dim=dim)
    raise custom_error.ToolkitError(
        summary="UnsupportedKind",
        message=f"Unknown form '{name}'. Please choose one from '{[kind.value for kind in FormKind]}'.",
    )
