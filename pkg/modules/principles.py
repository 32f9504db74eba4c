"""Kinetic-energy convexity, hidden convexity and Picone inequalities as signed gap functionals.

Gaps are arranged so that the inequality holds exactly when the gap is non-negative. All operations
broadcast over leading axes: a PointSample may hold one point or a batch of points.
"""
import dataclasses
import enum
import logging
from typing import NamedTuple

import numpy as np

from . import hfun
from .utilities import custom_error

log = logging.getLogger(name="log." + __name__)


class CounterexampleKind(str, enum.Enum):
    """Regimes in which the convexity principles fail."""

    BETA_ABOVE = "beta_above"
    Q_ABOVE = "q_above"


@dataclasses.dataclass(frozen=True)
class PointSample:
    """Value u > 0 and gradient of a function at one point (or a batch of points)."""

    u: np.ndarray
    grad_u: np.ndarray


@dataclasses.dataclass(frozen=True)
class DiscretePair:
    """Values of u and v at two points x and y."""

    ux: np.ndarray
    uy: np.ndarray
    vx: np.ndarray
    vy: np.ndarray


@dataclasses.dataclass(frozen=True)
class KineticPoint:
    """Mass m > 0, momentum phi and the exponent beta of H(phi) / m^beta."""

    m: np.ndarray
    phi: np.ndarray
    beta: float


@dataclasses.dataclass(frozen=True)
class DiscreteDensity:
    """Probability density rho with respect to reference weights nu on grid nodes."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if values.shape != weights.shape:
            raise custom_error.ToolkitError(
                summary="DimensionMismatch",
                message=f"Density has {values.shape} values but {weights.shape} weights.",
            )
        if np.any(values < 0) or np.any(weights <= 0):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message="Density values must be non-negative and reference weights positive.",
            )
        if abs(weights.sum() - 1.0) > 1e-10 or abs(np.sum(values * weights) - 1.0) > 1e-10:
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message="Reference weights and the density must both have unit mass.",
            )


class PiconeGap(NamedTuple):
    lhs: np.ndarray
    rhs: np.ndarray
    gap: np.ndarray
    weak_rhs: np.ndarray


class FisherInformation(NamedTuple):
    value: float
    substituted: float


class GapTerms(NamedTuple):
    """Signed gap together with the magnitude of the compared terms."""

    gap: np.ndarray
    scale: np.ndarray


def _require_unit_interval(t: float | np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise custom_error.ToolkitError(summary="ParameterError", message=f"t must lie in [0, 1], got {t}.")
    return t


def _require_homogeneous(H: hfun.HomogeneousForm) -> None:
    if not H.homogeneous:
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message=f"{H.describe()} is not positively homogeneous; use the anisotropic variants.",
        )


def _require_picone_range(p: float, q: float) -> None:
    if not 1.0 < q <= p:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Picone inequalities need 1 < q <= p, got p={p}, q={q}.",
        )


def _signed_power(a: np.ndarray, exponent: float) -> np.ndarray:
    """|a|^(exponent - 1) a, finite at a = 0 for every exponent > 1."""
    return np.sign(a) * np.abs(a) ** (exponent - 1.0)


def kinetic_energy(H: hfun.HomogeneousForm, pt: KineticPoint) -> np.ndarray:
    """
    Generalized kinetic energy H(phi) / m^beta.

    Raises:
        ToolkitError: ParameterError if some mass is not positive
    """
    m = np.asarray(pt.m, dtype=float)
    if np.any(m <= 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Kinetic energy needs masses m > 0.")
    return hfun.eval_H(H=H, z=pt.phi) / m**pt.beta


def kinetic_terms(H: hfun.HomogeneousForm, pt0: KineticPoint, pt1: KineticPoint, t: float) -> GapTerms:
    """Kinetic convexity gap with its scale; raises ParameterError when the points disagree on beta."""
    if pt0.beta != pt1.beta:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Kinetic points must share beta, got {pt0.beta} and {pt1.beta}.",
        )
    t = _require_unit_interval(t=t)
    middle = KineticPoint(
        m=(1 - t) * np.asarray(pt0.m, dtype=float) + t * np.asarray(pt1.m, dtype=float),
        phi=(1 - t)[..., None] * np.asarray(pt0.phi, dtype=float) + t[..., None] * np.asarray(pt1.phi, dtype=float),
        beta=pt0.beta,
    )
    e0 = kinetic_energy(H=H, pt=pt0)
    e1 = kinetic_energy(H=H, pt=pt1)
    chord = (1 - t) * e0 + t * e1
    return GapTerms(gap=chord - kinetic_energy(H=H, pt=middle), scale=1.0 + np.maximum(np.abs(e0), np.abs(e1)))


def kinetic_convexity_gap(H: hfun.HomogeneousForm, pt0: KineticPoint, pt1: KineticPoint, t: float) -> np.ndarray:
    """(1-t) E(pt0) + t E(pt1) - E((1-t) pt0 + t pt1); non-negative whenever 0 <= beta <= p - 1."""
    return kinetic_terms(H=H, pt0=pt0, pt1=pt1, t=t).gap


def anisotropic_kinetic_energy(
    exponents: tuple[float, ...], betas: tuple[float, ...], m: np.ndarray, phi: np.ndarray
) -> np.ndarray:
    """Sum of |phi_i|^p_i / m^beta_i, jointly convex when 0 < beta_i <= p_i - 1."""
    exponents = np.asarray(exponents, dtype=float)
    betas = np.asarray(betas, dtype=float)
    phi = hfun.as_vector(z=phi, dimension=exponents.size)
    m = np.asarray(m, dtype=float)
    if betas.shape != exponents.shape:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Got {exponents.size} exponents but {betas.size} betas.",
        )
    if np.any(m <= 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Kinetic energy needs masses m > 0.")
    return np.sum(np.abs(phi) ** exponents / m[..., None] ** betas, axis=-1)


def sigma_interpolate(u0: np.ndarray, u1: np.ndarray, q: float, t: float) -> np.ndarray:
    """
    Interpolating curve ((1-t) u0^q + t u1^q)^(1/q).

    Raises:
        ToolkitError: ParameterError for negative values, q < 1 or t outside [0, 1]
    """
    u0 = np.asarray(u0, dtype=float)
    u1 = np.asarray(u1, dtype=float)
    if np.any(u0 < 0) or np.any(u1 < 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="sigma_t needs non-negative values.")
    if q < 1:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"sigma_t needs q >= 1, got {q}.")
    t = _require_unit_interval(t=t)
    return ((1 - t) * u0**q + t * u1**q) ** (1.0 / q)


def _grad_sigma(s0: PointSample, s1: PointSample, q: float, t: float | np.ndarray, degenerate_ok: bool) -> np.ndarray:
    sigma = sigma_interpolate(u0=s0.u, u1=s1.u, q=q, t=t)
    t = np.asarray(t, dtype=float)
    g0 = np.asarray(s0.grad_u, dtype=float)
    g1 = np.asarray(s1.grad_u, dtype=float)
    u0 = np.asarray(s0.u, dtype=float)[..., None]
    u1 = np.asarray(s1.u, dtype=float)[..., None]
    tt = t[..., None]

    combination = (1 - tt) * u0 ** (q - 1) * g0 + tt * u1 ** (q - 1) * g1
    vanishing = sigma == 0
    if np.any(vanishing):
        nonzero = np.any(g0 != 0, axis=-1) | np.any(g1 != 0, axis=-1)
        if not degenerate_ok or np.any(vanishing & nonzero):
            raise custom_error.ToolkitError(
                summary="ParameterError",
                message="sigma_t vanishes at a point with a non-zero gradient.",
            )
    safe = np.where(vanishing, 1.0, sigma)[..., None]
    return np.where(vanishing[..., None], 0.0, safe ** (1 - q) * combination)


def grad_sigma(s0: PointSample, s1: PointSample, q: float, t: float) -> np.ndarray:
    """
    Pointwise gradient of sigma_t: sigma_t^(1-q) [(1-t) u0^(q-1) grad u0 + t u1^(q-1) grad u1].

    Raises:
        ToolkitError: ParameterError if sigma_t = 0
    """
    return _grad_sigma(s0=s0, s1=s1, q=q, t=t, degenerate_ok=False)


def hidden_terms(H: hfun.HomogeneousForm, s0: PointSample, s1: PointSample, q: float, t: float) -> GapTerms:
    h0 = hfun.eval_H(H=H, z=s0.grad_u)
    h1 = hfun.eval_H(H=H, z=s1.grad_u)
    t = np.asarray(t, dtype=float)
    along = hfun.eval_H(H=H, z=_grad_sigma(s0=s0, s1=s1, q=q, t=t, degenerate_ok=True))
    return GapTerms(gap=(1 - t) * h0 + t * h1 - along, scale=1.0 + np.maximum(h0, h1))


def hidden_convexity_gap(H: hfun.HomogeneousForm, s0: PointSample, s1: PointSample, q: float, t: float) -> np.ndarray:
    """(1-t) H(grad u0) + t H(grad u1) - H(grad sigma_t); non-negative for 1 < q <= p
    (q <= p_1 for the anisotropic form)."""
    return hidden_terms(H=H, s0=s0, s1=s1, q=q, t=t).gap


def picone_gap(H: hfun.HomogeneousForm, su: PointSample, sv: PointSample, q: float) -> PiconeGap:
    """
    General Picone inequality (1/p) <grad H(grad u), grad(v^q / u^(q-1))> <= H(grad v)^(q/p) H(grad u)^((p-q)/p).

    Parameters:
        H (HomogeneousForm): positively p-homogeneous integrand
        su (PointSample): u > 0 and grad u
        sv (PointSample): v >= 0 and grad v
        q (float): exponent with 1 < q <= p

    Returns:
        PiconeGap: lhs, rhs, gap = rhs - lhs and the weak right-hand side (q/p) H(grad v) + ((p-q)/p) H(grad u)

    Raises:
        ToolkitError: ParameterError if u = 0 somewhere, v < 0 or q is out of range
    """
    _require_homogeneous(H=H)
    p = H.degree
    _require_picone_range(p=p, q=q)
    u = np.asarray(su.u, dtype=float)
    v = np.asarray(sv.u, dtype=float)
    if np.any(u <= 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Picone inequality needs u > 0.")
    if np.any(v < 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Picone inequality needs v >= 0.")

    ratio = (v / u)[..., None]
    grad_u = np.asarray(su.grad_u, dtype=float)
    grad_v = np.asarray(sv.grad_u, dtype=float)
    test_gradient = q * ratio ** (q - 1) * grad_v - (q - 1) * ratio**q * grad_u
    lhs = np.sum(hfun.grad_H(H=H, z=grad_u) * test_gradient, axis=-1) / p

    hu = hfun.eval_H(H=H, z=grad_u)
    hv = hfun.eval_H(H=H, z=grad_v)
    rhs = hv ** (q / p) * hu ** ((p - q) / p)
    weak_rhs = (q / p) * hv + ((p - q) / p) * hu
    return PiconeGap(lhs=lhs, rhs=rhs, gap=rhs - lhs, weak_rhs=weak_rhs)


def anisotropic_picone_gap(
    exponents: tuple[float, ...], q_exponents: tuple[float, ...], su: PointSample, sv: PointSample
) -> np.ndarray:
    """
    Per-coordinate Picone inequality summed over coordinates for H(z) = sum |z_i|^p_i:
    sum |u_i|^(p_i-2) u_i (v^q_i / u^(q_i-1))_i <= sum |v_i|^q_i |u_i|^(p_i-q_i), with 1 < q_i <= p_i.

    Raises:
        ToolkitError: ParameterError for u <= 0, v < 0 or q_i outside (1, p_i]
    """
    exponents = np.asarray(exponents, dtype=float)
    q_exponents = np.asarray(q_exponents, dtype=float)
    if exponents.shape != q_exponents.shape or np.any(q_exponents <= 1) or np.any(q_exponents > exponents):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Anisotropic Picone needs 1 < q_i <= p_i, got p={exponents}, q={q_exponents}.",
        )
    u = np.asarray(su.u, dtype=float)[..., None]
    v = np.asarray(sv.u, dtype=float)[..., None]
    if np.any(u <= 0) or np.any(v < 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Picone inequality needs u > 0, v >= 0.")
    grad_u = hfun.as_vector(z=su.grad_u, dimension=exponents.size)
    grad_v = hfun.as_vector(z=sv.grad_u, dimension=exponents.size)

    ratio = v / u
    test_gradient = q_exponents * ratio ** (q_exponents - 1) * grad_v - (q_exponents - 1) * ratio**q_exponents * grad_u
    lhs = np.sum(_signed_power(a=grad_u, exponent=exponents) * test_gradient, axis=-1)
    rhs = np.sum(np.abs(grad_v) ** q_exponents * np.abs(grad_u) ** (exponents - q_exponents), axis=-1)
    return rhs - lhs


def discrete_picone_terms(d: DiscretePair, p: float, q: float) -> GapTerms:
    _require_picone_range(p=p, q=q)
    ux, uy = np.asarray(d.ux, dtype=float), np.asarray(d.uy, dtype=float)
    vx, vy = np.asarray(d.vx, dtype=float), np.asarray(d.vy, dtype=float)
    if np.any(ux <= 0) or np.any(uy <= 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Discrete Picone needs u(x), u(y) > 0.")
    if np.any(vx < 0) or np.any(vy < 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="Discrete Picone needs v(x), v(y) >= 0.")

    du = ux - uy
    rhs = np.abs(vx - vy) ** q * np.abs(du) ** (p - q)
    lhs = _signed_power(a=du, exponent=p) * (vx**q / ux ** (q - 1) - vy**q / uy ** (q - 1))
    return GapTerms(gap=rhs - lhs, scale=1.0 + np.maximum(np.abs(rhs), np.abs(lhs)))


def discrete_picone_gap(d: DiscretePair, p: float, q: float) -> np.ndarray:
    """|v(x)-v(y)|^q |u(x)-u(y)|^(p-q) - J_p(u(x)-u(y)) [v(x)^q / u(x)^(q-1) - v(y)^q / u(y)^(q-1)] >= 0."""
    return discrete_picone_terms(d=d, p=p, q=q).gap


def discrete_hidden_terms(
    u0x: np.ndarray, u0y: np.ndarray, u1x: np.ndarray, u1y: np.ndarray, p: float, q: float, t: float
) -> GapTerms:
    if q <= 1:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"Discrete hidden convexity needs q > 1, got {q}.")
    sigma_x = sigma_interpolate(u0=u0x, u1=u1x, q=q, t=t)
    sigma_y = sigma_interpolate(u0=u0y, u1=u1y, q=q, t=t)
    t = np.asarray(t, dtype=float)
    d0 = np.abs(np.asarray(u0x, dtype=float) - u0y) ** p
    d1 = np.abs(np.asarray(u1x, dtype=float) - u1y) ** p
    return GapTerms(gap=(1 - t) * d0 + t * d1 - np.abs(sigma_x - sigma_y) ** p, scale=1.0 + np.maximum(d0, d1))


def discrete_hidden_gap(
    u0x: np.ndarray, u0y: np.ndarray, u1x: np.ndarray, u1y: np.ndarray, p: float, q: float, t: float
) -> np.ndarray:
    """(1-t)|u0(x)-u0(y)|^p + t|u1(x)-u1(y)|^p - |sigma_t(x)-sigma_t(y)|^p; non-negative for q <= p."""
    return discrete_hidden_terms(u0x=u0x, u0y=u0y, u1x=u1x, u1y=u1y, p=p, q=q, t=t).gap


def elementary_terms(A: np.ndarray, t: np.ndarray, q: float) -> GapTerms:
    A = np.asarray(A, dtype=float)
    t = _require_unit_interval(t=t)
    if np.any(A < 0) or q <= 1:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Elementary inequality needs A >= 0 and q > 1, got q={q}.",
        )
    rhs = np.abs(A - t) ** q
    lhs = (1 - t) ** (q - 1) * (A**q - t)
    return GapTerms(gap=rhs - lhs, scale=1.0 + np.maximum(np.abs(rhs), np.abs(lhs)))


def elementary_gap(A: np.ndarray, t: np.ndarray, q: float) -> np.ndarray:
    """|A - t|^q - (1-t)^(q-1) (A^q - t), non-negative for A >= 0, 0 <= t <= 1."""
    return elementary_terms(A=A, t=t, q=q).gap


def derivative_at_zero(H: hfun.HomogeneousForm, su: PointSample, sv: PointSample, q: float) -> np.ndarray:
    """
    Closed-form derivative of t -> H(grad sigma_t) at t = 0:
    <grad H(grad u), grad v> (v/u)^(q-1) - (p(q-1)/q) H(grad u) (v/u)^q - (p/q) H(grad u).
    By hidden convexity it never exceeds H(grad v) - H(grad u).

    Raises:
        ToolkitError: ParameterError if u = 0 somewhere
    """
    _require_homogeneous(H=H)
    p = H.degree
    u = np.asarray(su.u, dtype=float)
    if np.any(u <= 0):
        raise custom_error.ToolkitError(summary="ParameterError", message="The derivative at t = 0 needs u > 0.")
    ratio = np.asarray(sv.u, dtype=float) / u
    hu = hfun.eval_H(H=H, z=su.grad_u)
    pairing = np.sum(hfun.grad_H(H=H, z=su.grad_u) * np.asarray(sv.grad_u, dtype=float), axis=-1)
    return pairing * ratio ** (q - 1) - (p * (q - 1) / q) * hu * ratio**q - (p / q) * hu


def finite_difference_derivative(
    H: hfun.HomogeneousForm, su: PointSample, sv: PointSample, q: float, step: float = 1e-6
) -> np.ndarray:
    """One-sided second-order difference (-3 f(0) + 4 f(h) - f(2h)) / 2h of f(t) = H(grad sigma_t)."""
    values = [
        hfun.eval_H(H=H, z=_grad_sigma(s0=su, s1=sv, q=q, t=k * step, degenerate_ok=True)) for k in range(3)
    ]
    return (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * step)


def fisher_information(
    H: hfun.HomogeneousForm, beta: float, rho: DiscreteDensity, grad_rho: np.ndarray
) -> FisherInformation:
    """
    Information functional sum H(grad rho / rho) rho^(p-beta) nu, together with its substituted form
    (p/(p-beta))^p sum H(grad rho^((p-beta)/p)) nu. Both are returned so callers can compare them.

    Raises:
        ToolkitError: ParameterError for beta outside [0, p-1] or rho = 0 where grad rho != 0
    """
    _require_homogeneous(H=H)
    p = H.degree
    if not 0 <= beta <= p - 1:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Information functional needs 0 <= beta <= p - 1 = {p - 1}, got {beta}.",
        )
    values = np.asarray(rho.values, dtype=float)
    weights = np.asarray(rho.weights, dtype=float)
    grad_rho = hfun.as_vector(z=grad_rho, dimension=H.dimension)
    if grad_rho.shape[:-1] != values.shape:
        raise custom_error.ToolkitError(
            summary="DimensionMismatch",
            message=f"Density has shape {values.shape} but gradients have shape {grad_rho.shape}.",
        )
    empty = values == 0
    if np.any(empty & np.any(grad_rho != 0, axis=-1)):
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message="Density vanishes at a node with a non-zero gradient.",
        )

    safe = np.where(empty, 1.0, values)
    direct = hfun.eval_H(H=H, z=grad_rho / safe[..., None]) * safe ** (p - beta)
    exponent = (p - beta) / p
    root_gradient = exponent * safe[..., None] ** (exponent - 1) * grad_rho
    substituted = (p / (p - beta)) ** p * hfun.eval_H(H=H, z=root_gradient)

    value = float(np.sum(np.where(empty, 0.0, direct) * weights))
    substituted_value = float(np.sum(np.where(empty, 0.0, substituted) * weights))
    log.debug(msg=f"Information functional {value} (substituted form {substituted_value}).")
    return FisherInformation(value=value, substituted=substituted_value)


def counterexample(kind: CounterexampleKind | str, H: hfun.HomogeneousForm, params: dict) -> float:
    """
    Builds the explicit counterexample outside the valid regime and returns the positive convexity violation.

    Parameters:
        kind (CounterexampleKind | str): "beta_above" (p-1 < beta < p) or "q_above" (q > p)
        H (HomogeneousForm): positively homogeneous integrand
        params (dict): beta or q (required); c > 1 (default 2); t in (0, 1) (default 0.5);
            m0, phi0 for beta_above; u0, grad_u0 for q_above (defaults 1 and the first basis vector)

    Returns:
        float: strictly positive violation

    Raises:
        ToolkitError: NoViolation if the parameters lie in the valid regime, ParameterError otherwise
    """
    _require_homogeneous(H=H)
    try:
        kind = CounterexampleKind(kind)
    except ValueError as e:
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message=f"Counterexample kind is not correct. Please choose one from '{[k.value for k in CounterexampleKind]}'.",
        ) from e

    p = H.degree
    c = float(params.get("c", 2.0))
    t = float(params.get("t", 0.5))
    basis = np.eye(H.dimension)[0]
    if not (c > 1 and 0 < t < 1):
        raise custom_error.ToolkitError(
            summary="NoViolation",
            message=f"Counterexamples need c > 1 and 0 < t < 1, got c={c}, t={t}.",
        )

    if kind == CounterexampleKind.BETA_ABOVE:
        beta = float(params["beta"])
        if not p - 1 < beta < p:
            raise custom_error.ToolkitError(
                summary="NoViolation",
                message=f"No violation exists for beta={beta}: counterexamples need p - 1 < beta < p = {p}.",
            )
        m0 = float(params.get("m0", 1.0))
        phi0 = np.asarray(params.get("phi0", basis), dtype=float)
        pt0 = KineticPoint(m=m0, phi=phi0, beta=beta)
        pt1 = KineticPoint(m=c * m0, phi=c * phi0, beta=beta)
        violation = -float(kinetic_convexity_gap(H=H, pt0=pt0, pt1=pt1, t=t))
    else:
        q = float(params["q"])
        if not q > p:
            raise custom_error.ToolkitError(
                summary="NoViolation",
                message=f"No violation exists for q={q}: counterexamples need q > p = {p}.",
            )
        u0 = float(params.get("u0", 1.0))
        grad_u0 = np.asarray(params.get("grad_u0", basis), dtype=float)
        s0 = PointSample(u=u0, grad_u=grad_u0)
        s1 = PointSample(u=c * u0, grad_u=c * grad_u0)
        violation = -float(hidden_convexity_gap(H=H, s0=s0, s1=s1, q=q, t=t))

    if not violation > 0:
        raise custom_error.ToolkitError(
            summary="NoViolation",
            message=f"Counterexample {kind.value} produced no violation ({violation}); check phi0 / grad_u0 != 0.",
        )
    log.debug(msg=f"Counterexample {kind.value} violation {violation}.")
    return violation
