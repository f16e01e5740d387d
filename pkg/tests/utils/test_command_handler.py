import json
import tempfile
import unittest
from argparse import Namespace
from fractions import Fraction
from pathlib import Path
from unittest.mock import MagicMock, patch

from common.constants import ExitCode, LogLevel
from common.exceptions import ConfigurationError, CorpusError, FormError
from config.run_config import RunConfig
from utils import command_handler
from utils.command_handler import (
    cmd_construct,
    cmd_density,
    cmd_descent_verify,
    cmd_moments,
    cmd_pell,
    cmd_rho,
    cmd_scan,
    cmd_surface,
    cmd_verify,
    handle_command,
)
from utils.tables import read_table
from verification.suites import SuiteResult, VerifyReport


def read_csv(path: Path):
    with open(path, encoding="utf-8") as stream:
        return read_table(stream)


class CommandTestCase(unittest.TestCase):
    """
    Runs commands against a temporary cache and output directory with a
    mocked logger.
    """

    def setUp(self):
        self.mock_logger = MagicMock(level=LogLevel.SILENT)
        patch("config.project_config.config.get_logger", return_value=self.mock_logger).start()
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)

    def tearDown(self):
        patch.stopall()
        self.tmp.cleanup()

    def run_config(self, A=1, B=2, model="full", N=10, x_max=400, grid="dyadic") -> RunConfig:
        return RunConfig(
            A=A,
            B=B,
            model=model,
            N=N,
            x_max=x_max,
            workers=1,
            seed=585,
            cache_dir=str(self.root / "cache"),
            output_dir=str(self.root / "output"),
            surface_grid=grid,
            density_grid=grid,
        )


class TestHandleCommand(CommandTestCase):
    """Tests that each subcommand reaches its cmd_* function."""

    def test_dispatch(self):
        run_config = self.run_config()
        args = Namespace(k="1,2", cubic="1,0,0,1", bound=8, diff=False, dt_max=3, suites=None, corrupt=None)
        for command, name in [
            ("scan", "cmd_scan"),
            ("density", "cmd_density"),
            ("moments", "cmd_moments"),
            ("surface", "cmd_surface"),
            ("rho", "cmd_rho"),
            ("descent-verify", "cmd_descent_verify"),
            ("pell", "cmd_pell"),
            ("construct", "cmd_construct"),
            ("verify", "cmd_verify"),
        ]:
            with self.subTest(command=command), patch.object(command_handler, name) as handler:
                handler.return_value = ExitCode.SUCCESS
                args.command = command
                self.assertEqual(handle_command(args, run_config), ExitCode.SUCCESS)
                handler.assert_called_once()

    def test_unknown_command(self):
        args = Namespace(command="plot")
        self.assertEqual(handle_command(args, self.run_config()), ExitCode.USAGE_ERROR)
        self.mock_logger.log.assert_called_with(LogLevel.DEBUG, "Unknown command: plot")


class TestScanCommands(CommandTestCase):
    def test_scan_writes_summary(self):
        run_config = self.run_config()
        self.assertEqual(cmd_scan(run_config), ExitCode.SUCCESS)
        path = self.root / "output" / "scan_full_A1_B2_N10.json"
        summary = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(summary["family"]["twists"], 14)
        self.assertEqual(summary["statistics"]["twists_scanned"], 14)
        self.assertTrue(Path(summary["corpus"]).is_file())

    def test_rerun_is_identical(self):
        run_config = self.run_config()
        cmd_scan(run_config)
        path = self.root / "output" / "scan_full_A1_B2_N10.json"
        first = path.read_bytes()
        cmd_scan(run_config)
        self.assertEqual(path.read_bytes(), first)

    def test_density_needs_corpus(self):
        with self.assertRaises(CorpusError):
            cmd_density(self.run_config())

    def test_density_table(self):
        run_config = self.run_config()
        cmd_scan(run_config)
        self.assertEqual(cmd_density(run_config), ExitCode.SUCCESS)
        schema, columns, rows = read_csv(self.root / "output" / "density_full_A1_B2_N10.csv")
        self.assertEqual(schema, "# schema: density v1")
        self.assertEqual(columns, ["N", "twists", "with_points", "sqrt_N", "N_over_log_kappa", "constructed"])
        self.assertEqual([row[0] for row in rows], ["1", "2", "4", "8", "10"])
        self.assertEqual(rows[-1][1], "14")
        # no construction column off the short model
        self.assertEqual({row[5] for row in rows}, {""})
        self.assertEqual(rows[0][4], "")

    def test_single_threshold(self):
        run_config = self.run_config(grid="10")
        cmd_scan(run_config)
        cmd_density(run_config)
        _, _, rows = read_csv(self.root / "output" / "density_full_A1_B2_N10.csv")
        self.assertEqual(len(rows), 1)

    def test_density_reads_its_own_grid_and_kappa(self):
        run_config = self.run_config(grid="4")
        run_config.density_grid = "5,10"
        run_config.density_kappa = Fraction(1, 2)
        cmd_scan(run_config)
        cmd_density(run_config)
        path = self.root / "output" / "density_full_A1_B2_N10.csv"
        _, _, rows = read_csv(path)
        self.assertEqual([row[0] for row in rows], ["5", "10"])
        self.assertIn("# kappa = 1/2\n", path.read_text(encoding="utf-8"))

    def test_moments(self):
        run_config = self.run_config()
        cmd_scan(run_config)
        self.assertEqual(cmd_moments(run_config, "1,2"), ExitCode.SUCCESS)
        _, columns, rows = read_csv(self.root / "output" / "moments_full_A1_B2_N10.csv")
        self.assertEqual(columns, ["k", "moment", "moment_float"])
        self.assertEqual([row[0] for row in rows], ["1", "2"])

    def test_bad_moment_orders(self):
        with self.assertRaises(ConfigurationError):
            cmd_moments(self.run_config(), "one")


class TestSurfaceCommands(CommandTestCase):
    def test_growth_table_with_diff(self):
        run_config = self.run_config()
        self.assertEqual(cmd_surface(run_config, "1,0,0,1", 8, True), ExitCode.SUCCESS)
        _, columns, rows = read_csv(self.root / "output" / "surface_1_0_0_1.csv")
        self.assertEqual(columns, ["B", "count", "count_over_B", "count_over_B_log"])
        self.assertEqual([row[:2] for row in rows[:2]], [["1", "8"], ["2", "12"]])
        _, _, diff = read_csv(self.root / "output" / "surface_1_0_0_1_diff.csv")
        self.assertEqual({row[3] for row in diff}, {"EQUAL"})
        self.mock_logger.log.assert_any_call(LogLevel.SILENT, "EQUAL")

    def test_inseparable_cubic(self):
        with self.assertRaises(FormError):
            cmd_surface(self.run_config(), "1,0,0,0", 8, False)

    def test_rho(self):
        self.assertEqual(cmd_rho(self.run_config(N=10), "1,0,0,1"), ExitCode.SUCCESS)
        _, columns, rows = read_csv(self.root / "output" / "rho_1_0_0_1_N10.csv")
        self.assertEqual(columns, ["N", "lambda", "mean", "reference", "deviation", "exact"])
        self.assertEqual(rows[0][2], "1.461905")
        self.assertEqual(rows[0][5], "True")


class TestDescentVerify(CommandTestCase):
    def test_full_model_passes(self):
        run_config = self.run_config()
        cmd_scan(run_config)
        self.assertEqual(cmd_descent_verify(run_config, 3), ExitCode.SUCCESS)
        report = json.loads((self.root / "output" / "descent_full_A1_B2_N10.json").read_text(encoding="utf-8"))
        self.assertTrue(report["passed"])
        self.assertEqual(report["Dt_max"], 3)
        self.assertGreater(report["checked"], 0)
        _, _, rows = read_csv(self.root / "output" / "descent_full_A1_B2_N10_catalogue.csv")
        self.assertIn(["6", "3", "9", "2", "3"], rows)
        self.mock_logger.log.assert_any_call(LogLevel.SILENT, "PASS")

    def test_short_model_rejected(self):
        run_config = self.run_config(A=0, B=1, model="short", x_max=100)
        cmd_scan(run_config)
        with self.assertRaises(ConfigurationError):
            cmd_descent_verify(run_config, 3)


class TestPellAndConstruct(CommandTestCase):
    def test_single_equation(self):
        args = Namespace(a=1, b=2, u=1, c=None, d=None, v=None, bound=100)
        self.assertEqual(cmd_pell(self.run_config(), args), ExitCode.SUCCESS)
        _, columns, rows = read_csv(self.root / "output" / "pell_1_2_1.csv")
        self.assertEqual(columns, ["x", "y"])
        self.assertEqual(rows, [["3", "2"], ["17", "12"], ["99", "70"]])

    def test_system(self):
        args = Namespace(a=1, b=2, u=1, c=1, d=3, v=1, bound=10**4)
        cmd_pell(self.run_config(), args)
        _, columns, rows = read_csv(self.root / "output" / "pell_1_2_1_1_3_1.csv")
        self.assertEqual(columns, ["x", "y", "z"])
        self.assertEqual(rows, [["3", "2", "1"]])

    def test_incomplete_system(self):
        args = Namespace(a=1, b=2, u=1, c=1, d=None, v=None, bound=100)
        with self.assertRaises(ConfigurationError):
            cmd_pell(self.run_config(), args)

    def test_construct(self):
        run_config = self.run_config(A=0, B=1, model="short", N=20)
        self.assertEqual(cmd_construct(run_config), ExitCode.SUCCESS)
        _, columns, rows = read_csv(self.root / "output" / "construct_short_A0_B1_N20.csv")
        self.assertEqual(columns, ["D", "alpha", "beta", "x", "y"])
        for D, alpha, beta, x, y in rows:
            D, alpha, beta = int(D), int(alpha), int(beta)
            d = alpha**3 + beta**3
            with self.subTest(D=D):
                self.assertLessEqual(abs(D), 20)
                self.assertEqual(D, beta * d)
                self.assertEqual((int(x), int(y)), (alpha * d, d * d))

    def test_construct_needs_short_model(self):
        with self.assertRaises(ConfigurationError):
            cmd_construct(self.run_config())


class TestVerifyCommand(CommandTestCase):
    def test_failure_sets_exit_code(self):
        report = VerifyReport(585, "pell", [SuiteResult("pell", False, 4, ["(3, 2) solves x^2 - 2y^2 = 1"], 0.5)])
        with patch.object(command_handler, "run_suites", return_value=report) as run_suites:
            self.assertEqual(cmd_verify(self.run_config(), "pell", "pell"), ExitCode.VERIFICATION_FAILURE)
            run_suites.assert_called_once_with(585, corrupt="pell", names=["pell"])
        saved = json.loads((self.root / "output" / "verify.json").read_text(encoding="utf-8"))
        self.assertFalse(saved["passed"])
        self.assertEqual(saved["suites"][0]["failures"], ["(3, 2) solves x^2 - 2y^2 = 1"])

    def test_success(self):
        report = VerifyReport(585, None, [SuiteResult("arith", True, 10, [], 0.1)])
        with patch.object(command_handler, "run_suites", return_value=report):
            self.assertEqual(cmd_verify(self.run_config(), None, None), ExitCode.SUCCESS)


if __name__ == "__main__":
    unittest.main()
