"""Seeded randomized property sweeps over the convexity principles and the homogeneous-form identities."""
import dataclasses
import logging
from typing import Callable

import numpy as np

from . import hfun, principles
from .utilities import config, custom_error, streams

log = logging.getLogger(name="log." + __name__)

FD_TOLERANCE = 1e-6
DERIVATIVE_TOLERANCE = 1e-4
VIOLATION_THRESHOLD = 1e-8
FISHER_NODES = 8


@dataclasses.dataclass(frozen=True)
class SweepSetting:
    """Parameters shared by every trial of one sweep."""

    H: hfun.HomogeneousForm
    q: float
    beta: float
    c: float = 2.0
    t: float = 0.5

    @property
    def p(self) -> float:
        return self.H.degree


@dataclasses.dataclass(frozen=True)
class SweepResult:
    """Outcome of one sweep: the smallest normalized gap and the inputs that produced it."""

    principle: str
    params: dict
    trials: int
    min_gap: float
    min_raw_gap: float
    argmin_inputs: dict
    seed: int
    passed: bool

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


# a batch sampler returns (normalized gaps, raw gaps, inputs keyed by name with one row per trial)
Batch = tuple[np.ndarray, np.ndarray, dict[str, np.ndarray]]


def _gradients(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    return rng.uniform(*config.GRADIENT_RANGE, size=(size, dim))


def _values(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(*config.VALUE_RANGE, size=size)


def _normalized(terms: principles.GapTerms) -> Batch:
    return terms.gap / terms.scale, terms.gap, {}


def _homogeneity(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    z = _gradients(rng=rng, size=size, dim=st.H.dimension)
    lam = _values(rng=rng, size=size)
    scaled = hfun.eval_H(H=st.H, z=lam[:, None] * z)
    expected = lam**st.p * hfun.eval_H(H=st.H, z=z)
    raw = -np.abs(scaled - expected)
    return raw / (1.0 + expected), raw, {"z": z, "lambda": lam}


def _euler(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    z = _gradients(rng=rng, size=size, dim=st.H.dimension)
    value = hfun.eval_H(H=st.H, z=z)
    raw = -np.abs(np.sum(hfun.grad_H(H=st.H, z=z) * z, axis=-1) - st.p * value)
    return raw / (1.0 + st.p * value), raw, {"z": z}


def _gradient(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    z = _gradients(rng=rng, size=size, dim=st.H.dimension)
    exact = hfun.grad_H(H=st.H, z=z)
    step = 1e-6 * np.maximum(1.0, np.linalg.norm(z, axis=-1))[:, None]
    approx = np.empty_like(z)
    for axis in range(st.H.dimension):
        shift = np.zeros_like(z)
        shift[:, axis] = step[:, 0]
        approx[:, axis] = (hfun.eval_H(H=st.H, z=z + shift) - hfun.eval_H(H=st.H, z=z - shift)) / (2 * step[:, 0])
    error = np.max(np.abs(exact - approx), axis=-1)
    scale = 1.0 + np.max(np.abs(exact), axis=-1)
    # finite differences are accurate to FD_TOLERANCE only, so the gap is measured against that budget
    raw = FD_TOLERANCE * scale - error
    return raw / scale, raw, {"z": z}


def _magic(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    if st.H.kind == hfun.FormKind.ANISOTROPIC:
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message="Norm-pair identities need a form built on a norm.",
        )
    pair = st.H.norm or hfun.NormPair.euclid()
    x = _gradients(rng=rng, size=size, dim=st.H.dimension)
    magic, direction, euler = hfun.norm_pair_checks(pair=pair, x=x)
    raw = -np.maximum(np.maximum(magic, direction), euler)
    return raw, raw, {"x": x}


def _root_power(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    F = hfun.root_power(H=st.H, q=st.q)
    z0 = _gradients(rng=rng, size=size, dim=st.H.dimension)
    z1 = _gradients(rng=rng, size=size, dim=st.H.dimension)
    f0 = hfun.eval_H(H=F, z=z0)
    f1 = hfun.eval_H(H=F, z=z1)
    scale = 1.0 + np.maximum(f0, f1)
    convexity = 0.5 * (f0 + f1) - hfun.eval_H(H=F, z=0.5 * (z0 + z1))
    identity = -np.abs(f0 - hfun.eval_H(H=st.H, z=z0) ** (st.q / st.p))
    raw = np.minimum(convexity, identity)
    return raw / scale, raw, {"z0": z0, "z1": z1}


def _kinetic(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    dim = st.H.dimension
    pt0 = principles.KineticPoint(m=_values(rng=rng, size=size), phi=_gradients(rng=rng, size=size, dim=dim), beta=st.beta)
    pt1 = principles.KineticPoint(m=_values(rng=rng, size=size), phi=_gradients(rng=rng, size=size, dim=dim), beta=st.beta)
    t = rng.uniform(0.0, 1.0, size=size)
    normalized, raw, _ = _normalized(terms=principles.kinetic_terms(H=st.H, pt0=pt0, pt1=pt1, t=t))
    return normalized, raw, {"m0": pt0.m, "phi0": pt0.phi, "m1": pt1.m, "phi1": pt1.phi, "t": t}


def _point_samples(rng: np.random.Generator, size: int, dim: int) -> tuple[principles.PointSample, principles.PointSample]:
    s0 = principles.PointSample(u=_values(rng=rng, size=size), grad_u=_gradients(rng=rng, size=size, dim=dim))
    s1 = principles.PointSample(u=_values(rng=rng, size=size), grad_u=_gradients(rng=rng, size=size, dim=dim))
    return s0, s1


def _sample_inputs(s0: principles.PointSample, s1: principles.PointSample) -> dict[str, np.ndarray]:
    return {"u0": s0.u, "grad_u0": s0.grad_u, "u1": s1.u, "grad_u1": s1.grad_u}


def _hidden(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    s0, s1 = _point_samples(rng=rng, size=size, dim=st.H.dimension)
    t = rng.uniform(0.0, 1.0, size=size)
    normalized, raw, _ = _normalized(terms=principles.hidden_terms(H=st.H, s0=s0, s1=s1, q=st.q, t=t))
    return normalized, raw, {**_sample_inputs(s0=s0, s1=s1), "t": t}


def _picone(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    su, sv = _point_samples(rng=rng, size=size, dim=st.H.dimension)
    result = principles.picone_gap(H=st.H, su=su, sv=sv, q=st.q)
    scale = 1.0 + np.maximum(np.abs(result.lhs), np.abs(result.rhs))
    return result.gap / scale, result.gap, _sample_inputs(s0=su, s1=sv)


def _weak_picone(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    su, sv = _point_samples(rng=rng, size=size, dim=st.H.dimension)
    result = principles.picone_gap(H=st.H, su=su, sv=sv, q=st.q)
    scale = 1.0 + np.maximum(np.abs(result.lhs), np.abs(result.weak_rhs))
    # weak form against lhs and Young's inequality against the strong rhs
    raw = np.minimum(result.weak_rhs - result.lhs, result.weak_rhs - result.rhs)
    return raw / scale, raw, _sample_inputs(s0=su, s1=sv)


def _discrete_picone(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    ux, uy = _values(rng=rng, size=size), _values(rng=rng, size=size)
    vx, vy = _values(rng=rng, size=size), _values(rng=rng, size=size)
    # v = 0 is admitted at either point
    vx = np.where(rng.uniform(size=size) < 0.1, 0.0, vx)
    vy = np.where(rng.uniform(size=size) < 0.1, 0.0, vy)
    pair = principles.DiscretePair(ux=ux, uy=uy, vx=vx, vy=vy)
    normalized, raw, _ = _normalized(terms=principles.discrete_picone_terms(d=pair, p=st.p, q=st.q))
    return normalized, raw, {"ux": ux, "uy": uy, "vx": vx, "vy": vy}


def _discrete_hidden(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    u0x, u0y, u1x, u1y = (_values(rng=rng, size=size) for _ in range(4))
    t = rng.uniform(0.0, 1.0, size=size)
    terms = principles.discrete_hidden_terms(u0x=u0x, u0y=u0y, u1x=u1x, u1y=u1y, p=st.p, q=st.q, t=t)
    normalized, raw, _ = _normalized(terms=terms)
    return normalized, raw, {"u0x": u0x, "u0y": u0y, "u1x": u1x, "u1y": u1y, "t": t}


def _elementary(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    A = rng.uniform(0.0, config.VALUE_RANGE[1], size=size)
    t = rng.uniform(0.0, 1.0, size=size)
    normalized, raw, _ = _normalized(terms=principles.elementary_terms(A=A, t=t, q=st.q))
    return normalized, raw, {"A": A, "t": t}


def _derivative(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    dim = st.H.dimension
    su = principles.PointSample(u=rng.uniform(1.0, 4.0, size=size), grad_u=_gradients(rng=rng, size=size, dim=dim))
    sv = principles.PointSample(u=rng.uniform(1.0, 4.0, size=size), grad_u=_gradients(rng=rng, size=size, dim=dim))
    closed = principles.derivative_at_zero(H=st.H, su=su, sv=sv, q=st.q)
    approx = principles.finite_difference_derivative(H=st.H, su=su, sv=sv, q=st.q)
    hu = hfun.eval_H(H=st.H, z=su.grad_u)
    hv = hfun.eval_H(H=st.H, z=sv.grad_u)
    reference = np.maximum(np.abs(closed), np.maximum(hu, hv))

    bound = (hv - hu) - closed
    agreement = DERIVATIVE_TOLERANCE * reference - np.abs(closed - approx)
    normalized = np.minimum(bound / (1.0 + reference), agreement / (1.0 + reference))
    return normalized, np.minimum(bound, agreement), _sample_inputs(s0=su, s1=sv)


def _fisher(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    dim = st.H.dimension
    normalized = np.empty(size)
    raw = np.empty(size)
    densities = np.empty((size, FISHER_NODES))
    weights = rng.uniform(0.5, 1.5, size=FISHER_NODES)
    weights /= weights.sum()

    for trial in range(size):
        pair = []
        for _ in range(2):
            values = _values(rng=rng, size=FISHER_NODES)
            values /= np.sum(values * weights)
            pair.append((principles.DiscreteDensity(values=values, weights=weights), _gradients(rng=rng, size=FISHER_NODES, dim=dim)))
        (rho0, g0), (rho1, g1) = pair
        middle = principles.DiscreteDensity(values=0.5 * (rho0.values + rho1.values), weights=weights)

        info0 = principles.fisher_information(H=st.H, beta=st.beta, rho=rho0, grad_rho=g0)
        info1 = principles.fisher_information(H=st.H, beta=st.beta, rho=rho1, grad_rho=g1)
        info_mid = principles.fisher_information(H=st.H, beta=st.beta, rho=middle, grad_rho=0.5 * (g0 + g1))
        scale = 1.0 + max(info0.value, info1.value)
        convexity = 0.5 * (info0.value + info1.value) - info_mid.value
        agreement = -abs(info0.value - info0.substituted)
        raw[trial] = min(convexity, agreement)
        normalized[trial] = raw[trial] / scale
        densities[trial] = rho0.values
    return normalized, raw, {"rho0": densities}


def _anisotropic_picone(rng: np.random.Generator, size: int, st: SweepSetting) -> Batch:
    dim = st.H.dimension
    exponents = np.asarray(st.H.exponents if st.H.exponents else (st.p,) * dim)
    q_exponents = np.minimum(st.q, exponents)
    su, sv = _point_samples(rng=rng, size=size, dim=dim)
    gap = principles.anisotropic_picone_gap(
        exponents=tuple(exponents), q_exponents=tuple(q_exponents), su=su, sv=sv
    )
    rhs = np.sum(np.abs(sv.grad_u) ** q_exponents * np.abs(su.grad_u) ** (exponents - q_exponents), axis=-1)
    scale = 1.0 + rhs + np.abs(rhs - gap)
    return gap / scale, gap, _sample_inputs(s0=su, s1=sv)


_SAMPLERS: dict[str, Callable[[np.random.Generator, int, SweepSetting], Batch]] = {
    "homogeneity": _homogeneity,
    "euler": _euler,
    "gradient": _gradient,
    "magic": _magic,
    "root-power": _root_power,
    "kinetic": _kinetic,
    "hidden": _hidden,
    "picone": _picone,
    "weak-picone": _weak_picone,
    "discrete-picone": _discrete_picone,
    "discrete-hidden": _discrete_hidden,
    "elementary": _elementary,
    "derivative": _derivative,
    "fisher": _fisher,
    "anisotropic-picone": _anisotropic_picone,
}

_NEEDS_Q_AT_MOST_P = {"root-power", "hidden", "picone", "weak-picone", "discrete-picone", "discrete-hidden", "derivative", "anisotropic-picone"}
_NEEDS_BETA = {"kinetic", "fisher"}
_NEEDS_HOMOGENEOUS = {"homogeneity", "euler", "root-power", "picone", "weak-picone", "derivative", "fisher"}


def _validate(principle: str, st: SweepSetting) -> None:
    if principle not in config.VERIFY_PRINCIPLES:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Principle is not correct. Please choose one from '{config.VERIFY_PRINCIPLES}'.",
        )
    if principle in _NEEDS_Q_AT_MOST_P and not 1.0 < st.q <= st.p:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"{principle} needs 1 < q <= p, got p={st.p}, q={st.q}; the q > p regime is covered by counterexample-q.",
        )
    if principle == "elementary" and not st.q > 1.0:
        raise custom_error.ToolkitError(summary="ParameterError", message=f"elementary needs q > 1, got q={st.q}.")
    if principle in _NEEDS_BETA and not 0.0 <= st.beta <= st.p - 1.0:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"{principle} needs 0 <= beta <= p - 1, got beta={st.beta}; larger beta is covered by counterexample-beta.",
        )
    if principle in _NEEDS_HOMOGENEOUS and not st.H.homogeneous:
        raise custom_error.ToolkitError(
            summary="UnsupportedKind",
            message=f"{principle} needs a positively homogeneous form, got {st.H.describe()}.",
        )


def _rows(inputs: dict[str, np.ndarray], row: int) -> dict:
    return {key: np.asarray(value)[row].tolist() for key, value in inputs.items()}


def _counterexample(principle: str, st: SweepSetting, seed: int, params: dict) -> SweepResult:
    if principle == "counterexample-beta":
        kind, inputs = principles.CounterexampleKind.BETA_ABOVE, {"beta": st.beta, "c": st.c, "t": st.t}
    else:
        kind, inputs = principles.CounterexampleKind.Q_ABOVE, {"q": st.q, "c": st.c, "t": st.t}
    violation = principles.counterexample(kind=kind, H=st.H, params=inputs)
    return SweepResult(
        principle=principle,
        params=params,
        trials=1,
        min_gap=violation,
        min_raw_gap=violation,
        argmin_inputs=inputs,
        seed=seed,
        passed=bool(violation > VIOLATION_THRESHOLD),
    )


def run_sweep(
    principle: str,
    H: hfun.HomogeneousForm,
    q: float,
    trials: int,
    seed: int,
    beta: float | None = None,
    c: float = 2.0,
    t: float = 0.5,
    batch_size: int = config.SWEEP_BATCH_SIZE,
    threads: int = config.THREADS,
) -> SweepResult:
    """
    Runs one randomized property sweep. Each trial's gap is normalized by one plus the size of the compared
    terms; the sweep passes when the smallest normalized gap is at least -GAP_TOLERANCE.
    Counterexample principles instead evaluate one explicit violation and pass when it is positive.

    Parameters:
        principle (str): one of config.VERIFY_PRINCIPLES
        H (HomogeneousForm): integrand; its degree is p
        q (float): second exponent
        trials (int): number of random trials
        seed (int): user seed; batch k draws from stream k
        beta (float | None, optional): kinetic exponent. Defaults to p - 1 (p - 1/2 for counterexample-beta).
        c (float, optional): counterexample scaling. Defaults to 2.
        t (float, optional): counterexample interpolation time. Defaults to 0.5.
        batch_size (int, optional): trials per batch. Defaults to config.SWEEP_BATCH_SIZE.
        threads (int, optional): worker threads. Defaults to config.THREADS.

    Returns:
        SweepResult: aggregated outcome

    Raises:
        ToolkitError: ParameterError for invalid names or out-of-range parameters
    """
    seed = streams.validate_seed(seed=seed)
    if beta is None:
        beta = H.degree - 0.5 if principle == "counterexample-beta" else H.degree - 1.0
    st = SweepSetting(H=H, q=float(q), beta=float(beta), c=float(c), t=float(t))
    params = {"H": H.describe(), "p": st.p, "q": st.q, "beta": st.beta}

    if principle in ("counterexample-beta", "counterexample-q"):
        result = _counterexample(principle=principle, st=st, seed=seed, params={**params, "c": st.c, "t": st.t})
        log.info(msg=f"Counterexample {principle}: violation {result.min_gap:.6e}.")
        return result

    _validate(principle=principle, st=st)
    sampler = _SAMPLERS[principle]

    def worker(index: int, size: int) -> Batch:
        return sampler(streams.generator(seed=seed, stream=index), size, st)

    batches = streams.map_batches(worker=worker, total=trials, batch_size=batch_size, threads=threads)

    best_gap, best_raw, best_inputs = np.inf, np.inf, {}
    for normalized, raw, inputs in batches:
        row = int(np.argmin(normalized))
        best_raw = min(best_raw, float(np.min(raw)))
        if normalized[row] < best_gap:
            best_gap = float(normalized[row])
            best_inputs = _rows(inputs=inputs, row=row)

    passed = bool(best_gap >= -config.GAP_TOLERANCE)
    log.info(msg=f"Sweep {principle} over {trials} trials: min normalized gap {best_gap:.3e}, passed={passed}.")
    return SweepResult(
        principle=principle,
        params=params,
        trials=trials,
        min_gap=best_gap,
        min_raw_gap=best_raw,
        argmin_inputs=best_inputs,
        seed=seed,
        passed=passed,
    )


def default_principles(H: hfun.HomogeneousForm, q: float | None = None, beta: float | None = None) -> list[str]:
    """Every sweep principle that applies to H (and to q and beta when given), in config.VERIFY_PRINCIPLES order;
    counterexamples excluded."""
    selected = []
    for principle in config.VERIFY_PRINCIPLES:
        if principle not in _SAMPLERS:
            continue
        if q is not None and principle in _NEEDS_Q_AT_MOST_P and not 1.0 < q <= H.degree:
            continue
        if q is not None and principle == "elementary" and not q > 1.0:
            continue
        if beta is not None and principle in _NEEDS_BETA and not 0.0 <= beta <= H.degree - 1.0:
            continue
        if principle in _NEEDS_HOMOGENEOUS and not H.homogeneous:
            continue
        if principle == "magic" and H.kind == hfun.FormKind.ANISOTROPIC:
            continue
        selected.append(principle)
    return selected
