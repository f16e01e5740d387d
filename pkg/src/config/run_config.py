"""
Run Configuration Module
This module provides the configuration of a workbench run: the twist family,
search bounds, descent exponents, worker count and output locations.
Values come from command line flags, an optional config file, environment
variables (with .env loaded) or defaults, in that order of precedence.

Command Line Usage:
    python run_config.py --config runs/mordell.conf

Environment Variables:
    TWIST_A, TWIST_B: Family coefficients
    TWIST_MODEL: short, full or partial
    TWIST_N: Twist bound N (|D| <= N)
    TWIST_X_MAX: Integral point search bound (0 picks the size-dependent default)
    KAPPA_FULL, KAPPA_PARTIAL: log exponents of the descent bounds
    WORKBENCH_WORKERS: Worker processes for scans
    WORKBENCH_SEED: Seed of the verification suites
    WORKBENCH_CACHE_DIR, WORKBENCH_OUTPUT_DIR: Corpus cache and table output directories
    SURFACE_GRID: B-grid of the surface counts (comma list, dyadic or linear)
    DENSITY_GRID: N-thresholds of the density and construction tables
    DENSITY_KAPPA: exponent of the N / (log N)^kappa density reference

Config file format: one `key = value` per line, keys are the attribute
names below (A, B, model, N, x_max, ...); `#` starts a comment.
"""

import argparse
import os
from fractions import Fraction
from pathlib import Path

from dotenv import load_dotenv

from common.constants import Model
from common.exceptions import ConfigurationError, CurveValidationError

ROOT_DIR = Path(__file__).parents[1]


class RunConfig:
    def __init__(
        self,
        A=None,
        B=None,
        model=None,
        N=None,
        x_max=None,
        kappa_full=None,
        kappa_partial=None,
        workers=None,
        seed=None,
        cache_dir=None,
        output_dir=None,
        surface_grid=None,
        density_grid=None,
        density_kappa=None,
    ):
        """
        Load run configuration values.

        Precedence of values is as follows:
        - RunConfig init arguments
        - environment variable (with .env loaded)
        - default value
        """
        # Attempt to load .env file
        load_dotenv()

        # A = 0 is a valid family, so fall back only on None
        self.A = self._pick(A, "TWIST_A", 0)
        self.B = self._pick(B, "TWIST_B", 1)
        model = self._pick(model, "TWIST_MODEL", "short")
        if model not in Model:
            raise ConfigurationError(f"unknown model '{model}', expected one of {[str(m) for m in Model]}")
        self.model = Model(model)
        self.N = self._pick(N, "TWIST_N", 1000)
        self.x_max = self._pick(x_max, "TWIST_X_MAX", 0)
        self.kappa_full = self._pick(kappa_full, "KAPPA_FULL", 13.0)
        self.kappa_partial = self._pick(kappa_partial, "KAPPA_PARTIAL", 12.25)
        self.workers = self._pick(workers, "WORKBENCH_WORKERS", 1)
        self.seed = self._pick(seed, "WORKBENCH_SEED", 585)
        self.cache_dir = Path(self._pick(cache_dir, "WORKBENCH_CACHE_DIR", str(ROOT_DIR / "cache")))
        self.output_dir = Path(self._pick(output_dir, "WORKBENCH_OUTPUT_DIR", str(ROOT_DIR / "output")))
        self.surface_grid = self._pick(surface_grid, "SURFACE_GRID", "dyadic")
        self.density_grid = self._pick(density_grid, "DENSITY_GRID", "dyadic")
        self.density_kappa = self._pick(density_kappa, "DENSITY_KAPPA", Fraction(1, 8))

    @classmethod
    def load(cls, config_file: str | None = None, **flags) -> "RunConfig":
        """Build from flags (None means unset) layered over a config file, the environment and defaults."""
        values = read_config_file(config_file) if config_file else {}
        values.update({key: value for key, value in flags.items() if value is not None})
        return cls(**values)

    @staticmethod
    def _get_env_var(env_var_name, default_value):
        return type(default_value)(os.getenv(env_var_name, default_value))

    @classmethod
    def _pick(cls, value, env_var_name, default_value):
        try:
            if value is None:
                return cls._get_env_var(env_var_name, default_value)
            return type(default_value)(value)
        except ValueError as e:
            raise ConfigurationError(f"invalid value for {env_var_name}: {e}") from e

    @property
    def kappa(self) -> float:
        return self.kappa_full if self.model == Model.FULL else self.kappa_partial

    @property
    def effective_x_max(self) -> int:
        from twists.analysis import default_x_max

        return self.x_max or default_x_max(self.N)

    def validate(self):
        """
        Check bounds and the family invariants.

        Raises:
            ConfigurationError: for non-positive bounds, worker counts or an invalid (A, B, model) family
        """
        from twists.curves import validate_family

        if self.N < 1:
            raise ConfigurationError(f"N must be positive, got {self.N}")
        if self.x_max < 0:
            raise ConfigurationError(f"x_max must be non-negative, got {self.x_max}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be positive, got {self.workers}")
        if self.kappa_full <= 0 or self.kappa_partial <= 0:
            raise ConfigurationError("descent exponents must be positive")
        if self.density_kappa <= 0:
            raise ConfigurationError(f"density kappa must be positive, got {self.density_kappa}")
        try:
            validate_family(self.A, self.B, self.model)
        except CurveValidationError as e:
            raise ConfigurationError(f"invalid family: {e}") from e

    def as_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "model": str(self.model),
            "N": self.N,
            "x_max": self.x_max,
            "kappa_full": self.kappa_full,
            "kappa_partial": self.kappa_partial,
            "workers": self.workers,
            "seed": self.seed,
            "cache_dir": str(self.cache_dir),
            "output_dir": str(self.output_dir),
            "surface_grid": self.surface_grid,
            "density_grid": self.density_grid,
            "density_kappa": str(self.density_kappa),
        }


_CONFIG_KEYS = frozenset(
    ("A", "B", "model", "N", "x_max", "kappa_full", "kappa_partial")
    + ("workers", "seed", "cache_dir", "output_dir", "surface_grid", "density_grid", "density_kappa")
)


def read_config_file(path: str) -> dict[str, str]:
    """
    Parse `key = value` lines.

    Raises:
        ConfigurationError: for a missing file, a line without `=` or an unknown key
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ConfigurationError(f"could not read config file '{path}': {e}") from e

    values = {}
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{number}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"{path}:{number}: unknown key '{key}'")
        values[key] = value
    return values


"""
    ------------------------------END OF CLASS----------------------------------
    ----------------------------------------------------------------------------
"""
# --------------------------Small test for .env and config file usage-----------
if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run Configuration")
    parser.add_argument("--config", type=str, help="Config file with key = value lines")
    parser.add_argument("-N", type=int, help="Twist bound")

    args = parser.parse_args()

    try:
        run_config = RunConfig.load(args.config, N=args.N)
        run_config.validate()
        for key, value in run_config.as_dict().items():
            print(f"{key}: {value}")
    except ValueError as e:
        print(f"Configuration Error: {e}")
