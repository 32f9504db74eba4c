"""Unit tests for modules.sweeps.py"""
from modules import hfun, sweeps
from modules.utilities import config
from . import context

PARAMETER_SETS = [(2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (1.5, 1.2)]
INEQUALITIES = ["hidden", "picone", "weak-picone", "discrete-picone", "discrete-hidden", "elementary", "kinetic"]


class TestRunSweep(context.BaseTestCase):
    """Tests for run_sweep function."""

    def test_inequalities_pass(self) -> None:
        """Test every inequality sweep passes 10^5 trials for every (p, q) set."""
        for p, q in PARAMETER_SETS:
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            for principle in INEQUALITIES:
                result = sweeps.run_sweep(principle=principle, H=H, q=q, trials=100_000, seed=7)
                self.assertTrue(expr=result.passed, msg=f"{principle} failed at p={p}, q={q}: {result.min_gap}")
                self.assertGreaterEqual(a=result.min_gap, b=-config.GAP_TOLERANCE)

    def test_identities_pass(self) -> None:
        """Test the form identities and the derivative agreement for a power of an l^r norm."""
        H = hfun.HomogeneousForm.power_norm(p=3.0, pair=hfun.NormPair.lp(r=2.5), dim=3)
        for principle in ("homogeneity", "euler", "gradient", "magic", "root-power", "derivative"):
            result = sweeps.run_sweep(principle=principle, H=H, q=2.0, trials=5_000, seed=3)
            self.assertTrue(expr=result.passed, msg=f"{principle}: {result.min_gap}")

    def test_fisher_and_anisotropic(self) -> None:
        """Test the information functional and anisotropic Picone sweeps."""
        fisher = sweeps.run_sweep(principle="fisher", H=hfun.HomogeneousForm.power_euclid(p=2.5, dim=2), q=2.0, trials=500, seed=1)
        self.assertTrue(expr=fisher.passed)
        anisotropic = sweeps.run_sweep(
            principle="anisotropic-picone", H=hfun.HomogeneousForm.anisotropic(exponents=[2.0, 3.0]), q=1.5, trials=10_000, seed=1
        )
        self.assertTrue(expr=anisotropic.passed)

    def test_reproducible(self) -> None:
        """Test equal seeds give equal results and the thread count does not matter."""
        H = hfun.HomogeneousForm.power_euclid(p=3.0, dim=2)
        first = sweeps.run_sweep(principle="hidden", H=H, q=2.0, trials=25_000, seed=11, batch_size=5_000, threads=1)
        second = sweeps.run_sweep(principle="hidden", H=H, q=2.0, trials=25_000, seed=11, batch_size=5_000, threads=3)
        self.assertEqual(first=first.to_dict(), second=second.to_dict())

    def test_argmin_inputs_recorded(self) -> None:
        """Test the minimizing inputs are reported row by row."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        result = sweeps.run_sweep(principle="discrete-picone", H=H, q=2.0, trials=1_000, seed=5)
        self.assertEqual(first=sorted(result.argmin_inputs), second=["ux", "uy", "vx", "vy"])
        self.assertIsInstance(obj=result.argmin_inputs["ux"], cls=float)

    def test_counterexamples(self) -> None:
        """Test counterexample sweeps report a violation above 1e-8 for beta in {p - 0.9, p - 0.1} and q in {p + 0.5, p + 1}."""
        for p in (2.0, 3.0):
            H = hfun.HomogeneousForm.power_euclid(p=p, dim=2)
            for beta in (p - 1 + 0.1, p - 0.1):
                result = sweeps.run_sweep(principle="counterexample-beta", H=H, q=2.0, trials=1, seed=0, beta=beta)
                self.assertTrue(expr=result.passed, msg=f"beta={beta}, p={p}: {result.min_gap}")
                self.assertAlmostEqual(first=result.params["beta"], second=beta)
            for q in (p + 0.5, p + 1.0):
                result = sweeps.run_sweep(principle="counterexample-q", H=H, q=q, trials=1, seed=0)
                self.assertTrue(expr=result.passed, msg=f"q={q}, p={p}: {result.min_gap}")
                self.assertGreater(a=result.min_gap, b=1e-8)

    def test_counterexample_default_beta(self) -> None:
        """Test the beta counterexample defaults to beta = p - 0.5."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        result = sweeps.run_sweep(principle="counterexample-beta", H=H, q=2.0, trials=1, seed=0)
        self.assertEqual(first=result.params["beta"], second=1.5)

    def test_q_above_p_routed_to_counterexample(self) -> None:
        """Test hidden with q > p raises ParameterError naming counterexample-q."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        error = self.assertRaisesSummary(
            self.error_parameter_error, sweeps.run_sweep, principle="hidden", H=H, q=3.0, trials=10, seed=0
        )
        self.assertIn(member="counterexample-q", container=error.message)

    def test_beta_above_range(self) -> None:
        """Test kinetic with beta > p - 1 raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        self.assertRaisesSummary(
            self.error_parameter_error, sweeps.run_sweep, principle="kinetic", H=H, q=2.0, trials=10, seed=0, beta=1.5
        )

    def test_unknown_principle(self) -> None:
        """Test an unknown principle raises ParameterError."""
        H = hfun.HomogeneousForm.power_euclid(p=2.0, dim=2)
        self.assertRaisesSummary(self.error_parameter_error, sweeps.run_sweep, principle="triangle", H=H, q=2.0, trials=10, seed=0)

    def test_non_homogeneous_form(self) -> None:
        """Test picone with an anisotropic form raises UnsupportedKind."""
        H = hfun.HomogeneousForm.anisotropic(exponents=[2.0, 3.0])
        self.assertRaisesSummary(self.error_unsupported_kind, sweeps.run_sweep, principle="picone", H=H, q=2.0, trials=10, seed=0)


class TestDefaultPrinciples(context.BaseTestCase):
    """Tests for default_principles function."""

    def test_homogeneous_form(self) -> None:
        """Test a power of the euclidean norm gets every sweep and no counterexample."""
        selected = sweeps.default_principles(H=hfun.HomogeneousForm.power_euclid(p=2.0, dim=2))
        self.assertEqual(first=len(selected), second=len(config.VERIFY_PRINCIPLES) - 2)
        self.assertNotIn(member="counterexample-q", container=selected)

    def test_anisotropic_form(self) -> None:
        """Test an anisotropic form skips the homogeneous-only sweeps and magic."""
        selected = sweeps.default_principles(H=hfun.HomogeneousForm.anisotropic(exponents=[2.0, 3.0]))
        self.assertNotIn(member="picone", container=selected)
        self.assertNotIn(member="magic", container=selected)
        self.assertIn(member="anisotropic-picone", container=selected)
        self.assertIn(member="hidden", container=selected)

    def test_q_above_p(self) -> None:
        """Test q > p drops the sweeps that need q <= p and keeps the rest."""
        selected = sweeps.default_principles(H=hfun.HomogeneousForm.power_euclid(p=2.0, dim=2), q=3.0)
        self.assertNotIn(member="picone", container=selected)
        self.assertNotIn(member="discrete-hidden", container=selected)
        self.assertIn(member="elementary", container=selected)
        self.assertIn(member="kinetic", container=selected)

    def test_beta_out_of_range(self) -> None:
        """Test beta above p - 1 drops the kinetic and Fisher sweeps."""
        selected = sweeps.default_principles(H=hfun.HomogeneousForm.power_euclid(p=2.0, dim=2), beta=1.5)
        self.assertNotIn(member="kinetic", container=selected)
        self.assertNotIn(member="fisher", container=selected)
