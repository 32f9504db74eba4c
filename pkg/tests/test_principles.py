"""Unit tests for modules.principles.py"""
import numpy as np

from modules import hfun, principles
from . import context

TOLERANCE = 1e-12
PARAMETER_SETS = [(2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (1.5, 1.2)]


def random_samples(seed: int, size: int, dim: int) -> tuple[principles.PointSample, principles.PointSample]:
    rng = np.random.default_rng(seed=seed)
    s0 = principles.PointSample(u=rng.uniform(1e-3, 10.0, size=size), grad_u=rng.uniform(-10.0, 10.0, size=(size, dim)))
    s1 = principles.PointSample(u=rng.uniform(1e-3, 10.0, size=size), grad_u=rng.uniform(-10.0, 10.0, size=(size, dim)))
    return s0, s1


class TestKineticConvexity(context.BaseTestCase):
    """Tests for kinetic_energy, kinetic_terms and kinetic_convexity_gap functions."""

    def test_energy_value(self) -> None:
        """Test |phi|^2 / m at phi = (3, 4), m = 5 is 5."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=2)
        energy = principles.kinetic_energy(H=H, pt=principles.KineticPoint(m=5.0, phi=np.array([3.0, 4.0]), beta=1.0))
        self.assertAlmostEqual(first=float(energy), second=5.0, places=12)

    def test_convex_for_beta_up_to_p_minus_one(self) -> None:
        """Test the normalized gap is non-negative for beta in {0, (p-1)/2, p-1}."""
        rng = np.random.default_rng(seed=10)
        size = 20_000
        for p in (1.5, 2.0, 3.0):
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            for beta in (0.0, 0.5 * (p - 1), p - 1):
                pt0 = principles.KineticPoint(m=rng.uniform(1e-3, 10, size), phi=rng.uniform(-10, 10, (size, 2)), beta=beta)
                pt1 = principles.KineticPoint(m=rng.uniform(1e-3, 10, size), phi=rng.uniform(-10, 10, (size, 2)), beta=beta)
                terms = principles.kinetic_terms(H=H, pt0=pt0, pt1=pt1, t=rng.uniform(0, 1, size))
                self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_non_positive_mass(self) -> None:
        """Test m = 0 raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=1)
        pt = principles.KineticPoint(m=0.0, phi=np.array([1.0]), beta=1.0)
        self.assertRaisesSummary(self.error_parameter_error, principles.kinetic_energy, H=H, pt=pt)

    def test_t_outside_unit_interval(self) -> None:
        """Test t = 1.5 raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=1)
        pt = principles.KineticPoint(m=1.0, phi=np.array([1.0]), beta=1.0)
        self.assertRaisesSummary(
            self.error_parameter_error, principles.kinetic_convexity_gap, H=H, pt0=pt, pt1=pt, t=1.5
        )

    def test_mismatched_beta(self) -> None:
        """Test points with different beta raise ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=1)
        pt0 = principles.KineticPoint(m=1.0, phi=np.array([1.0]), beta=1.0)
        pt1 = principles.KineticPoint(m=1.0, phi=np.array([1.0]), beta=0.5)
        self.assertRaisesSummary(
            self.error_parameter_error, principles.kinetic_convexity_gap, H=H, pt0=pt0, pt1=pt1, t=0.5
        )

    def test_anisotropic_energy(self) -> None:
        """Test |phi_1|^2 / m + |phi_2|^3 / m^2 and its midpoint convexity."""
        value = principles.anisotropic_kinetic_energy(exponents=(2.0, 3.0), betas=(1.0, 2.0), m=2.0, phi=np.array([2.0, 2.0]))
        self.assertAlmostEqual(first=float(value), second=4.0, places=12)

        rng = np.random.default_rng(seed=11)
        m0, m1 = rng.uniform(0.1, 5, 1000), rng.uniform(0.1, 5, 1000)
        phi0, phi1 = rng.normal(size=(1000, 2)), rng.normal(size=(1000, 2))
        energy = lambda m, phi: principles.anisotropic_kinetic_energy(exponents=(2.0, 3.0), betas=(0.5, 1.5), m=m, phi=phi)
        gap = 0.5 * (energy(m0, phi0) + energy(m1, phi1)) - energy(0.5 * (m0 + m1), 0.5 * (phi0 + phi1))
        self.assertGreaterEqual(a=float(gap.min()), b=-1e-12)


class TestHiddenConvexity(context.BaseTestCase):
    """Tests for sigma_interpolate, grad_sigma and hidden_convexity_gap functions."""

    def test_sigma_endpoints(self) -> None:
        """Test sigma_0 = u0 and sigma_1 = u1."""
        u0, u1 = np.array([1.0, 4.0]), np.array([2.0, 0.5])
        np.testing.assert_allclose(actual=principles.sigma_interpolate(u0=u0, u1=u1, q=3.0, t=0.0), desired=u0)
        np.testing.assert_allclose(actual=principles.sigma_interpolate(u0=u0, u1=u1, q=3.0, t=1.0), desired=u1)

    def test_grad_sigma_at_zero(self) -> None:
        """Test grad sigma_0 = grad u0."""
        s0, s1 = random_samples(seed=12, size=10, dim=2)
        np.testing.assert_allclose(actual=principles.grad_sigma(s0=s0, s1=s1, q=2.5, t=0.0), desired=s0.grad_u, rtol=1e-12)

    def test_grad_sigma_degenerate(self) -> None:
        """Test sigma = 0 with a non-zero gradient raises ParameterError."""
        s0 = principles.PointSample(u=0.0, grad_u=np.array([1.0]))
        s1 = principles.PointSample(u=0.0, grad_u=np.array([0.0]))
        self.assertRaisesSummary(self.error_parameter_error, principles.grad_sigma, s0=s0, s1=s1, q=2.0, t=0.5)

    def test_hidden_gap_non_negative(self) -> None:
        """Test the hidden convexity gap on random samples for every (p, q) set."""
        s0, s1 = random_samples(seed=13, size=20_000, dim=2)
        t = np.random.default_rng(seed=14).uniform(0, 1, 20_000)
        for p, q in PARAMETER_SETS:
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            terms = principles.hidden_terms(H=H, s0=s0, s1=s1, q=q, t=t)
            self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_hidden_gap_anisotropic(self) -> None:
        """Test hidden convexity of |z_1|^2 + |z_2|^3 for q = 2 <= p_1."""
        H = hfun.HomogeneousForm.anisotropic(exponents=[2.0, 3.0])
        s0, s1 = random_samples(seed=15, size=20_000, dim=2)
        terms = principles.hidden_terms(H=H, s0=s0, s1=s1, q=2.0, t=0.3)
        self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_equal_functions_zero_gap(self) -> None:
        """Test u0 = u1 gives a vanishing gap."""
        H = hfun.HomogeneousForm.power_euclid(p=3, dim=2)
        s0, _ = random_samples(seed=16, size=100, dim=2)
        gap = principles.hidden_convexity_gap(H=H, s0=s0, s1=s0, q=2.0, t=0.4)
        np.testing.assert_allclose(actual=gap, desired=np.zeros(100), atol=1e-9)


class TestPicone(context.BaseTestCase):
    """Tests for picone_gap and anisotropic_picone_gap functions."""

    def test_picone_non_negative(self) -> None:
        """Test gap >= 0 and weak rhs >= rhs on random samples."""
        su, sv = random_samples(seed=17, size=20_000, dim=3)
        for p, q in PARAMETER_SETS:
            H = hfun.HomogeneousForm.power_norm(p=p, pair=hfun.NormPair.lp(r=3.0), dim=3)
            result = principles.picone_gap(H=H, su=su, sv=sv, q=q)
            scale = 1.0 + np.maximum(np.abs(result.lhs), np.abs(result.rhs))
            self.assertGreaterEqual(a=float(np.min(result.gap / scale)), b=-TOLERANCE)
            self.assertGreaterEqual(a=float(np.min((result.weak_rhs - result.rhs) / (1.0 + result.weak_rhs))), b=-TOLERANCE)

    def test_picone_equality_for_v_equal_u(self) -> None:
        """Test v = u turns the inequality into an equality."""
        H = hfun.HomogeneousForm.power_euclid(p=3, dim=2)
        su, _ = random_samples(seed=18, size=100, dim=2)
        result = principles.picone_gap(H=H, su=su, sv=su, q=2.0)
        np.testing.assert_allclose(actual=result.gap, desired=np.zeros(100), atol=1e-8 * float(result.rhs.max()))

    def test_picone_q_above_p(self) -> None:
        """Test q > p raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=2)
        su, sv = random_samples(seed=19, size=3, dim=2)
        self.assertRaisesSummary(self.error_parameter_error, principles.picone_gap, H=H, su=su, sv=sv, q=3.0)

    def test_picone_non_positive_u(self) -> None:
        """Test u = 0 raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=1)
        su = principles.PointSample(u=np.array([0.0]), grad_u=np.array([[1.0]]))
        sv = principles.PointSample(u=np.array([1.0]), grad_u=np.array([[1.0]]))
        self.assertRaisesSummary(self.error_parameter_error, principles.picone_gap, H=H, su=su, sv=sv, q=2.0)

    def test_anisotropic_picone_non_negative(self) -> None:
        """Test the summed per-coordinate Picone inequality for p = (2, 3), q = (1.5, 2.5)."""
        su, sv = random_samples(seed=20, size=20_000, dim=2)
        gap = principles.anisotropic_picone_gap(exponents=(2.0, 3.0), q_exponents=(1.5, 2.5), su=su, sv=sv)
        rhs = np.sum(np.abs(sv.grad_u) ** np.array([1.5, 2.5]) * np.abs(su.grad_u) ** np.array([0.5, 0.5]), axis=-1)
        self.assertGreaterEqual(a=float(np.min(gap / (1.0 + rhs + np.abs(rhs - gap)))), b=-TOLERANCE)

    def test_anisotropic_picone_range(self) -> None:
        """Test q_i > p_i raises ParameterError."""
        su, sv = random_samples(seed=21, size=3, dim=2)
        self.assertRaisesSummary(
            self.error_parameter_error,
            principles.anisotropic_picone_gap,
            exponents=(2.0, 3.0),
            q_exponents=(2.5, 2.0),
            su=su,
            sv=sv,
        )


class TestDiscreteInequalities(context.BaseTestCase):
    """Tests for discrete_picone_gap, discrete_hidden_gap and elementary_gap functions."""

    def test_discrete_picone_non_negative(self) -> None:
        """Test the discrete Picone inequality, v = 0 admitted."""
        rng = np.random.default_rng(seed=22)
        size = 50_000
        ux, uy = rng.uniform(1e-3, 10, size), rng.uniform(1e-3, 10, size)
        vx, vy = rng.uniform(0, 10, size), np.where(rng.uniform(size=size) < 0.1, 0.0, rng.uniform(0, 10, size))
        for p, q in PARAMETER_SETS:
            terms = principles.discrete_picone_terms(d=principles.DiscretePair(ux=ux, uy=uy, vx=vx, vy=vy), p=p, q=q)
            self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_discrete_picone_equality(self) -> None:
        """Test v = u gives a zero gap."""
        pair = principles.DiscretePair(ux=np.array([1.0, 3.0]), uy=np.array([2.0, 0.5]), vx=np.array([1.0, 3.0]), vy=np.array([2.0, 0.5]))
        np.testing.assert_allclose(actual=principles.discrete_picone_gap(d=pair, p=3.0, q=2.0), desired=[0.0, 0.0], atol=1e-12)

    def test_discrete_picone_negative_v(self) -> None:
        """Test v < 0 raises ParameterError."""
        pair = principles.DiscretePair(ux=1.0, uy=2.0, vx=-1.0, vy=0.0)
        self.assertRaisesSummary(self.error_parameter_error, principles.discrete_picone_gap, d=pair, p=2.0, q=2.0)

    def test_discrete_hidden_non_negative(self) -> None:
        """Test discrete hidden convexity for q <= p."""
        rng = np.random.default_rng(seed=23)
        size = 50_000
        values = [rng.uniform(1e-3, 10, size) for _ in range(4)]
        t = rng.uniform(0, 1, size)
        for p, q in PARAMETER_SETS:
            terms = principles.discrete_hidden_terms(*values, p=p, q=q, t=t)
            self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_elementary_non_negative(self) -> None:
        """Test |A - t|^q >= (1-t)^(q-1) (A^q - t) on a dense grid."""
        A, t = np.meshgrid(np.linspace(0, 10, 400), np.linspace(0, 1, 400))
        for q in (1.2, 2.0, 3.0, 5.5):
            terms = principles.elementary_terms(A=A, t=t, q=q)
            self.assertGreaterEqual(a=float(np.min(terms.gap / terms.scale)), b=-TOLERANCE)

    def test_elementary_invalid_q(self) -> None:
        """Test q = 1 raises ParameterError."""
        self.assertRaisesSummary(self.error_parameter_error, principles.elementary_gap, A=np.array([1.0]), t=np.array([0.5]), q=1.0)


class TestDerivativeAtZero(context.BaseTestCase):
    """Tests for derivative_at_zero and finite_difference_derivative functions."""

    def test_matches_finite_differences(self) -> None:
        """Test the closed form against one-sided differences to relative 1e-4."""
        rng = np.random.default_rng(seed=24)
        size = 10_000
        su = principles.PointSample(u=rng.uniform(1, 4, size), grad_u=rng.uniform(-10, 10, (size, 2)))
        sv = principles.PointSample(u=rng.uniform(1, 4, size), grad_u=rng.uniform(-10, 10, (size, 2)))
        for p, q in PARAMETER_SETS:
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            closed = principles.derivative_at_zero(H=H, su=su, sv=sv, q=q)
            approx = principles.finite_difference_derivative(H=H, su=su, sv=sv, q=q)
            reference = np.maximum(np.abs(closed), np.maximum(hfun.eval_H(H=H, z=su.grad_u), hfun.eval_H(H=H, z=sv.grad_u)))
            self.assertLessEqual(a=float(np.max(np.abs(closed - approx) / reference)), b=1e-4)

    def test_bounded_by_difference(self) -> None:
        """Test the derivative never exceeds H(grad v) - H(grad u)."""
        su, sv = random_samples(seed=25, size=20_000, dim=2)
        H = hfun.HomogeneousForm.power_euclid(p=3, dim=2)
        closed = principles.derivative_at_zero(H=H, su=su, sv=sv, q=2.0)
        bound = hfun.eval_H(H=H, z=sv.grad_u) - hfun.eval_H(H=H, z=su.grad_u)
        scale = 1.0 + np.maximum(np.abs(closed), np.abs(bound))
        self.assertGreaterEqual(a=float(np.min((bound - closed) / scale)), b=-1e-10)


class TestFisherInformation(context.BaseTestCase):
    """Tests for fisher_information function."""

    @staticmethod
    def density(rng: np.random.Generator, weights: np.ndarray) -> principles.DiscreteDensity:
        values = rng.uniform(0.1, 2.0, weights.size)
        return principles.DiscreteDensity(values=values / np.sum(values * weights), weights=weights)

    def test_substituted_form_agrees(self) -> None:
        """Test the direct and substituted forms coincide."""
        rng = np.random.default_rng(seed=26)
        weights = np.full(6, 1 / 6)
        H = hfun.HomogeneousForm.power_euclid(p=3, dim=2)
        info = principles.fisher_information(H=H, beta=1.0, rho=self.density(rng=rng, weights=weights), grad_rho=rng.normal(size=(6, 2)))
        self.assertAlmostEqual(first=info.value, second=info.substituted, delta=1e-10 * (1 + info.value))

    def test_convex_along_segments(self) -> None:
        """Test midpoint convexity in (rho, grad rho) for beta in {0, p-1}."""
        rng = np.random.default_rng(seed=27)
        weights = np.full(5, 0.2)
        H = hfun.HomogeneousForm.power_euclid(p=2.5, dim=2)
        for beta in (0.0, 1.5):
            for _ in range(200):
                rho0, rho1 = self.density(rng=rng, weights=weights), self.density(rng=rng, weights=weights)
                g0, g1 = rng.normal(size=(5, 2)), rng.normal(size=(5, 2))
                middle = principles.DiscreteDensity(values=0.5 * (rho0.values + rho1.values), weights=weights)
                i0 = principles.fisher_information(H=H, beta=beta, rho=rho0, grad_rho=g0).value
                i1 = principles.fisher_information(H=H, beta=beta, rho=rho1, grad_rho=g1).value
                im = principles.fisher_information(H=H, beta=beta, rho=middle, grad_rho=0.5 * (g0 + g1)).value
                self.assertGreaterEqual(a=(0.5 * (i0 + i1) - im) / (1 + max(i0, i1)), b=-TOLERANCE)

    def test_beta_out_of_range(self) -> None:
        """Test beta > p - 1 raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2, dim=1)
        rho = principles.DiscreteDensity(values=np.ones(2), weights=np.full(2, 0.5))
        self.assertRaisesSummary(
            self.error_parameter_error, principles.fisher_information, H=H, beta=1.5, rho=rho, grad_rho=np.zeros((2, 1))
        )

    def test_density_mass(self) -> None:
        """Test a density without unit mass raises ParameterError."""
        self.assertRaisesSummary(
            self.error_parameter_error, principles.DiscreteDensity, values=np.full(2, 2.0), weights=np.full(2, 0.5)
        )


class TestCounterexample(context.BaseTestCase):
    """Tests for counterexample function."""

    def test_beta_above(self) -> None:
        """Test violations for beta in {p - 1 + 0.1, p - 0.1}."""
        for p in (2.0, 3.0):
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            for beta in (p - 1 + 0.1, p - 0.1):
                violation = principles.counterexample(kind="beta_above", H=H, params={"beta": beta, "c": 2.0})
                self.assertGreater(a=violation, b=1e-8)

    def test_q_above(self) -> None:
        """Test violations for q in {p + 0.5, p + 1} and the closed value at p = 2, q = 3."""
        for p in (1.5, 2.0, 3.0):
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            for q in (p + 0.5, p + 1.0):
                violation = principles.counterexample(kind=principles.CounterexampleKind.Q_ABOVE, H=H, params={"q": q})
                self.assertGreater(a=violation, b=1e-8)
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=1)
        violation = principles.counterexample(kind="q_above", H=H, params={"q": 3.0, "c": 2.0, "t": 0.5})
        self.assertAlmostEqual(first=violation, second=4.5 ** (2 / 3) - 2.5, places=12)

    def test_valid_regime_has_no_violation(self) -> None:
        """Test beta <= p - 1 and q <= p raise NoViolation."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        self.assertRaisesSummary(self.error_no_violation, principles.counterexample, kind="beta_above", H=H, params={"beta": 1.0})
        self.assertRaisesSummary(self.error_no_violation, principles.counterexample, kind="q_above", H=H, params={"q": 2.0})

    def test_unknown_kind(self) -> None:
        """Test an unknown kind raises UnsupportedKind."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        self.assertRaisesSummary(self.error_unsupported_kind, principles.counterexample, kind="gamma_above", H=H, params={})
