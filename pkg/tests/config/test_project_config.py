import os
import unittest
from fractions import Fraction
from io import StringIO
from unittest.mock import patch

from common.constants import LogLevel, Model
from common.exceptions import ConfigurationError
from config.project_config import Config


class ProjectConfigTestCase(unittest.TestCase):
    def setUp(self):
        patch.dict(os.environ, {}, clear=True).start()
        self.config = Config()

    def tearDown(self):
        patch.stopall()


class TestParseArguments(ProjectConfigTestCase):
    def test_family_flags_after_subcommand(self):
        args = self.config.parse_arguments(["scan", "-A", "1", "-B", "2", "--model", "full", "-N", "30"])
        self.assertEqual(args.command, "scan")
        self.assertEqual((args.A, args.B, args.model, args.N), (1, 2, "full", 30))
        self.assertEqual(args.x_max, 0)
        self.assertEqual((args.density_grid, args.density_kappa), ("dyadic", "1/8"))

    def test_subcommand_options(self):
        args = self.config.parse_arguments(["surface", "--cubic", "1,0,-1,1", "--bound", "16", "--diff"])
        self.assertEqual((args.cubic, args.bound, args.diff), ("1,0,-1,1", 16, True))
        args = self.config.parse_arguments(["descent-verify", "--model", "partial", "-A", "1", "-B", "1"])
        self.assertEqual(args.dt_max, 0)

    def test_pell_gets_family_defaults(self):
        args = self.config.parse_arguments(["pell", "--a", "1", "--b", "2", "--u", "1"])
        self.assertEqual((args.a, args.b, args.u, args.c), (1, 2, 1, None))
        self.assertEqual(args.bound, 10**6)
        self.assertEqual((args.A, args.B, args.model, args.N), (0, 1, "short", 1000))

    def test_environment_supplies_defaults(self):
        os.environ["TWIST_N"] = "77"
        args = self.config.parse_arguments(["scan"])
        self.assertEqual(args.N, 77)

    def test_bad_command_line(self):
        for argv in (["plot"], [], ["scan", "--model", "weierstrass"], ["pell", "--a", "1"]):
            with self.subTest(argv=argv), patch("sys.stderr", new_callable=StringIO):
                with self.assertRaises(SystemExit) as raised:
                    self.config.parse_arguments(argv)
                self.assertEqual(raised.exception.code, 2)


class TestInitialize(ProjectConfigTestCase):
    def test_initialize(self):
        self.config.initialize(["scan", "-s", "-A", "1", "-B", "2", "--model", "full", "-N", "10"])
        self.assertEqual(self.config.get_logger().level, LogLevel.SILENT)
        run_config = self.config.get_run_config()
        self.assertEqual((run_config.A, run_config.B, run_config.model, run_config.N), (1, 2, Model.FULL, 10))
        self.assertEqual(self.config.get_args().command, "scan")

    def test_density_flags(self):
        self.config.initialize(
            ["density", "-A", "1", "-B", "2", "--model", "full", "--density-grid", "5,10", "--density-kappa", "1/3"]
        )
        run_config = self.config.get_run_config()
        self.assertEqual((run_config.density_grid, run_config.density_kappa), ("5,10", Fraction(1, 3)))

    def test_log_levels(self):
        self.config.initialize(["verify", "-d"])
        self.assertEqual(self.config.get_logger().level, LogLevel.DEBUG)
        self.config.initialize(["verify"])
        self.assertEqual(self.config.get_logger().level, LogLevel.NORMAL)

    def test_invalid_family(self):
        with self.assertRaises(ConfigurationError):
            self.config.initialize(["scan", "--model", "full", "-A", "2", "-B", "1"])

    def test_logger_before_initialize(self):
        self.assertEqual(self.config.get_logger().level, LogLevel.SILENT)
        self.assertEqual(self.config.get_run_config().model, Model.SHORT)


if __name__ == "__main__":
    unittest.main()
