import os
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch

from common.constants import Model
from common.exceptions import ConfigurationError
from config.run_config import RunConfig, read_config_file


class RunConfigTestCase(unittest.TestCase):
    def setUp(self):
        # Start every test from an empty environment
        patch.dict(os.environ, {}, clear=True).start()
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        patch.stopall()
        self.tmp.cleanup()

    def write_config(self, text: str) -> str:
        path = Path(self.tmp.name) / "run.conf"
        path.write_text(text, encoding="utf-8")
        return str(path)


class TestRunConfig(RunConfigTestCase):
    def test_defaults(self):
        run_config = RunConfig()
        self.assertEqual((run_config.A, run_config.B, run_config.model), (0, 1, Model.SHORT))
        self.assertEqual((run_config.N, run_config.x_max), (1000, 0))
        self.assertEqual((run_config.kappa_full, run_config.kappa_partial), (13.0, 12.25))
        self.assertEqual((run_config.workers, run_config.seed), (1, 585))
        self.assertEqual(run_config.surface_grid, "dyadic")
        self.assertEqual((run_config.density_grid, run_config.density_kappa), ("dyadic", Fraction(1, 8)))

    def test_density_settings(self):
        os.environ.update({"DENSITY_GRID": "linear", "DENSITY_KAPPA": "1/4"})
        run_config = RunConfig()
        self.assertEqual((run_config.density_grid, run_config.density_kappa), ("linear", Fraction(1, 4)))
        path = self.write_config("density_kappa = 0.5\n")
        self.assertEqual(RunConfig.load(path).density_kappa, Fraction(1, 2))
        with self.assertRaises(ConfigurationError):
            RunConfig(density_kappa="steep")

    def test_environment(self):
        os.environ.update({"TWIST_A": "1", "TWIST_B": "2", "TWIST_MODEL": "full", "TWIST_N": "50"})
        run_config = RunConfig()
        self.assertEqual((run_config.A, run_config.B, run_config.model, run_config.N), (1, 2, Model.FULL, 50))
        self.assertIsInstance(run_config.N, int)

    def test_flags_beat_environment(self):
        os.environ["TWIST_N"] = "50"
        self.assertEqual(RunConfig(N=70).N, 70)
        self.assertEqual(RunConfig.load(None, N=None).N, 50)

    def test_config_file(self):
        path = self.write_config("# family\nA = 1\nB = 2  # coprime\nmodel = full\n\nN = 40\n")
        run_config = RunConfig.load(path, N=90)
        self.assertEqual((run_config.A, run_config.B, run_config.model), (1, 2, Model.FULL))
        self.assertEqual(run_config.N, 90)

    def test_config_file_beats_environment(self):
        os.environ["TWIST_N"] = "50"
        self.assertEqual(RunConfig.load(self.write_config("N = 40\n")).N, 40)

    def test_bad_values(self):
        with self.assertRaises(ConfigurationError):
            RunConfig(model="weierstrass")
        with self.assertRaises(ConfigurationError):
            RunConfig(N="many")
        os.environ["WORKBENCH_WORKERS"] = "two"
        with self.assertRaises(ConfigurationError):
            RunConfig()

    def test_kappa(self):
        self.assertEqual(RunConfig(A=1, B=2, model="full").kappa, 13.0)
        self.assertEqual(RunConfig(A=1, B=1, model="partial").kappa, 12.25)

    def test_effective_x_max(self):
        self.assertEqual(RunConfig(N=1000).effective_x_max, 10**8)
        self.assertEqual(RunConfig(N=2000).effective_x_max, 10**6)
        self.assertEqual(RunConfig(N=2000, x_max=500).effective_x_max, 500)

    def test_as_dict(self):
        values = RunConfig(A=1, B=2, model="full").as_dict()
        self.assertEqual(values["model"], "full")
        self.assertEqual(
            set(values),
            {"A", "B", "model", "N", "x_max", "kappa_full", "kappa_partial"}
            | {"workers", "seed", "cache_dir", "output_dir", "surface_grid", "density_grid", "density_kappa"},
        )


class TestValidate(RunConfigTestCase):
    def test_valid(self):
        RunConfig(A=1, B=2, model="full", N=10).validate()
        RunConfig(A=0, B=1, model="short").validate()

    def test_invalid(self):
        for kwargs in [
            {"N": 0},
            {"x_max": -1},
            {"workers": 0},
            {"kappa_full": 0.0},
            {"density_kappa": "0"},
            {"A": 2, "B": 1, "model": "full"},
            {"A": 2, "B": 4, "model": "full"},
            {"A": 0, "B": 0, "model": "short"},
            {"A": 2, "B": 1, "model": "partial"},
        ]:
            with self.subTest(**kwargs), self.assertRaises(ConfigurationError):
                RunConfig(**kwargs).validate()


class TestReadConfigFile(RunConfigTestCase):
    def test_errors(self):
        with self.assertRaises(ConfigurationError):
            read_config_file(str(Path(self.tmp.name) / "missing.conf"))
        with self.assertRaises(ConfigurationError):
            read_config_file(self.write_config("N 40\n"))
        with self.assertRaises(ConfigurationError):
            read_config_file(self.write_config("colour = red\n"))

    def test_values_stay_text(self):
        self.assertEqual(read_config_file(self.write_config("x_max = 100\n")), {"x_max": "100"})


if __name__ == "__main__":
    unittest.main()
