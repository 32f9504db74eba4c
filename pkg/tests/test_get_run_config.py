"""Unit tests for modules.get_run_config.py"""
import os
import tempfile

from modules import get_run_config
from modules.utilities import config
from . import context


class TestReadConfigFile(context.BaseTestCase):
    """Tests for read_config_file function."""

    def setUp(self) -> None:  # pylint: disable=C0103:invalid-name
        """Creates a temporary directory for config files."""
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()  # pylint: disable=R1732:consider-using-with
        self.options = {**get_run_config.SHARED_OPTIONS, **get_run_config.SUBCOMMAND_OPTIONS["eigen"]}

    def tearDown(self) -> None:  # pylint: disable=C0103:invalid-name
        """Removes the temporary directory."""
        self.directory.cleanup()
        super().tearDown()

    def write(self, text: str) -> str:
        path = os.path.join(self.directory.name, "run.cfg")
        with open(file=path, mode="w", encoding="utf-8") as file:
            file.write(text)
        return path

    def test_valid_file(self) -> None:
        """Test comments, blank lines, dashed keys and value conversion."""
        path = self.write(text="# eigen run\n\nnodes = 50\nstep-rule=diminishing  # slow\ninclude_timing = yes\n")

        values = get_run_config.read_config_file(path=path, options=self.options)

        self.assertEqual(first=values, second={"nodes": 50, "step_rule": "diminishing", "include_timing": True})

    def test_missing_file(self) -> None:
        """Test an unreadable file raises ConfigError."""
        self.assertRaisesSummary(
            self.error_config_error,
            get_run_config.read_config_file,
            path=os.path.join(self.directory.name, "missing.cfg"),
            options=self.options,
        )

    def test_malformed_line(self) -> None:
        """Test a line without '=' raises ConfigError naming the line."""
        path = self.write(text="nodes = 50\nnodes 60\n")
        error = self.assertRaisesSummary(self.error_config_error, get_run_config.read_config_file, path=path, options=self.options)
        self.assertTrue(expr=":2:" in error.message)

    def test_unknown_key(self) -> None:
        """Test a key of another subcommand raises ConfigError."""
        path = self.write(text="mode = local\n")
        self.assertRaisesSummary(self.error_config_error, get_run_config.read_config_file, path=path, options=self.options)

    def test_invalid_value(self) -> None:
        """Test a value the converter rejects raises ConfigError."""
        path = self.write(text="nodes = many\n")
        self.assertRaisesSummary(self.error_config_error, get_run_config.read_config_file, path=path, options=self.options)


class TestValidateValues(context.BaseTestCase):
    """Tests for validate_values function."""

    def test_valid(self) -> None:
        """Test valid values pass silently."""
        get_run_config.validate_values(values={"seed": 3, "format": "csv", "principle": "magic,discrete-picone"})

    def test_invalid_choice(self) -> None:
        """Test an unknown report format raises ConfigError."""
        self.assertRaisesSummary(self.error_config_error, get_run_config.validate_values, values={"seed": 0, "format": "xml"})

    def test_below_minimum(self) -> None:
        """Test nodes below 3 raise ConfigError."""
        self.assertRaisesSummary(self.error_config_error, get_run_config.validate_values, values={"seed": 0, "nodes": 2})

    def test_unknown_principle(self) -> None:
        """Test an unknown principle in a comma-separated list raises ConfigError."""
        error = self.assertRaisesSummary(
            self.error_config_error, get_run_config.validate_values, values={"seed": 0, "principle": "magic,bogus"}
        )
        self.assertTrue(expr="bogus" in error.message)

    def test_seed_range(self) -> None:
        """Test seeds outside [0, 2**64 - 1] raise ConfigError."""
        self.assertRaisesSummary(self.error_config_error, get_run_config.validate_values, values={"seed": -1})
        self.assertRaisesSummary(self.error_config_error, get_run_config.validate_values, values={"seed": 2**64})


class TestMain(context.BaseTestCase):
    """Tests for get_run_config.main function."""

    def setUp(self) -> None:  # pylint: disable=C0103:invalid-name
        """Creates a temporary directory for config files."""
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()  # pylint: disable=R1732:consider-using-with

    def tearDown(self) -> None:  # pylint: disable=C0103:invalid-name
        """Removes the temporary directory."""
        self.directory.cleanup()
        super().tearDown()

    def test_defaults(self) -> None:
        """Test a bare subcommand resolves every default."""
        run_config = get_run_config.main(argv=["eigen"])

        self.assertEqual(first=run_config.subcommand, second="eigen")
        self.assertEqual(first=run_config.seed, second=0)
        self.assertEqual(first=run_config.output_format, second="json")
        self.assertIsNone(obj=run_config.output)
        self.assertFalse(expr=run_config.include_timing)
        self.assertEqual(first=run_config.params["nodes"], second=100)
        self.assertEqual(first=run_config.params["tolerance"], second=config.EIGEN_TOLERANCE)
        self.assertEqual(first=run_config.explicit, second=frozenset())
        self.assertFalse(expr="seed" in run_config.params)

    def test_step_rule_help(self) -> None:
        """Test --help names the c0 / sqrt(k) rule under diminishing and keeps accelerated as the default."""
        help_text = get_run_config.build_parser().format_help()
        eigen_help = get_run_config.SUBCOMMAND_OPTIONS["eigen"]["step_rule"].help

        self.assertEqual(first=get_run_config.main(argv=["eigen"]).params["step_rule"], second="accelerated")
        self.assertIn(member="diminishing: projected subgradient steps c0 / sqrt(k)", container=eigen_help)
        self.assertIn(member="eigen", container=help_text)

    def test_flags(self) -> None:
        """Test flags with dashes, upper-case names and the timing switch."""
        run_config = get_run_config.main(
            argv=["hardy", "--mode", "fractional", "--N", "2", "--mc-samples", "20000", "--include-timing", "--log-level", "debug"]
        )

        self.assertEqual(first=run_config.params["mode"], second="fractional")
        self.assertEqual(first=run_config.params["N"], second=2)
        self.assertEqual(first=run_config.params["mc_samples"], second=20000)
        self.assertTrue(expr=run_config.include_timing)
        self.assertEqual(first=run_config.log_level, second="DEBUG")
        self.assertEqual(first=run_config.explicit, second=frozenset({"mode", "N", "mc_samples", "include_timing", "log_level"}))

    def test_precedence(self) -> None:
        """Test flags override the config file, which overrides defaults."""
        path = os.path.join(self.directory.name, "eigen.cfg")
        with open(file=path, mode="w", encoding="utf-8") as file:
            file.write("nodes = 50\nq = 1.5\nseed = 9\n")

        run_config = get_run_config.main(argv=["eigen", "--config", path, "--nodes", "80"])

        self.assertEqual(first=run_config.params["nodes"], second=80)
        self.assertEqual(first=run_config.params["q"], second=1.5)
        self.assertEqual(first=run_config.params["p"], second=2.0)
        self.assertEqual(first=run_config.seed, second=9)
        self.assertEqual(first=run_config.config_file, second=path)
        self.assertEqual(first=run_config.explicit, second=frozenset({"nodes", "q", "seed"}))

    def test_describe(self) -> None:
        """Test the configuration echo."""
        run_config = get_run_config.main(argv=["verify", "--seed", "7", "--format", "csv"])

        described = run_config.describe()

        self.assertEqual(first=described["subcommand"], second="verify")
        self.assertEqual(first=described["seed"], second=7)
        self.assertEqual(first=described["format"], second="csv")
        self.assertEqual(first=described["params"]["principle"], second="all")

    def test_errors(self) -> None:
        """Test missing subcommands, unknown flags, bad types and invalid values raise ConfigError."""
        for argv in (
            [],
            ["solve"],
            ["eigen", "--bogus", "1"],
            ["eigen", "--nodes", "many"],
            ["eigen", "--solver", "newton"],
            ["verify", "--trials", "0"],
            ["hardy", "--seed", "-4"],
        ):
            with self.subTest(argv=argv):
                self.assertRaisesSummary(self.error_config_error, get_run_config.main, argv=argv)
