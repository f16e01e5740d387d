"""
Project Configuration and Constants
------------------------------------
This module contains global configuration settings and the command line
parser of the twist workbench.

"""

import argparse

from common.constants import LogLevel, Model
from config.run_config import ROOT_DIR, RunConfig
from utils.workbench_logger import WorkbenchLogger

COMMANDS = ("scan", "density", "moments", "surface", "rho", "descent-verify", "pell", "construct", "verify")


class Config:
    def __init__(self):
        # Leave these attributes uninitialized so the main function
        # can explicitly call initialize. This prevents issues with
        # imports in other modules during testing.
        self.args = None
        self.logger = None
        self.run_config = None

    def get_args(self):
        """Return the parsed arguments."""
        return self.args

    def get_logger(self):
        """Return the logger instance, or a silent one before initialize."""
        if self.logger is None:
            return WorkbenchLogger(LogLevel.SILENT)
        return self.logger

    def get_run_config(self):
        """Return the run_config instance."""
        if self.run_config is None:
            self.run_config = RunConfig()
        return self.run_config

    def initialize(self, argv=None):
        """Set up configurations that depend on runtime conditions."""
        # Config file and env vars give the defaults; flags override them
        self.args = args = self.parse_arguments(argv)
        if args.silent:
            loglevel = LogLevel.SILENT
        else:
            loglevel = LogLevel.DEBUG if args.debug else LogLevel.NORMAL

        self.run_config = RunConfig.load(
            args.config,
            A=args.A,
            B=args.B,
            model=args.model,
            N=args.N,
            x_max=args.x_max,
            kappa_full=args.kappa_full,
            kappa_partial=args.kappa_partial,
            workers=args.workers,
            seed=args.seed,
            cache_dir=args.cache_dir,
            output_dir=args.output,
            surface_grid=args.grid,
            density_grid=args.density_grid,
            density_kappa=args.density_kappa,
        )
        self.run_config.validate()

        self.logger = WorkbenchLogger(loglevel)

    def parse_arguments(self, argv=None):
        """
        Parse command line arguments of the workbench.

        A first pass reads --config so the config file can supply defaults;
        the full parser then shows those defaults in --help.

        Returns:
            argparse.Namespace: Parsed command line arguments
        """
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config", type=str, default=None)
        known, _ = pre.parse_known_args(argv)
        defaults = RunConfig.load(known.config)

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("-s", "--silent", action="store_true", help="Reduce program output")
        common.add_argument("-d", "--debug", action="store_true", help="Enable debug output")
        common.add_argument("--config", type=str, help="Config file with key = value lines", default=known.config)
        common.add_argument("--seed", type=int, help="Seed of the verification suites", default=defaults.seed)
        common.add_argument("--workers", type=int, help="Worker processes for scans", default=defaults.workers)
        common.add_argument(
            "--output", type=str, help="Directory for CSV tables and reports", default=str(defaults.output_dir)
        )
        common.add_argument("--cache-dir", type=str, help="Corpus cache directory", default=str(defaults.cache_dir))

        family = argparse.ArgumentParser(add_help=False)
        family.add_argument("-A", type=int, help="Family coefficient A", default=defaults.A)
        family.add_argument("-B", type=int, help="Family coefficient B", default=defaults.B)
        family.add_argument(
            "--model", type=str, choices=[str(m) for m in Model], help="Weierstrass model", default=str(defaults.model)
        )
        family.add_argument("-N", type=int, help="Twist bound |D| <= N", default=defaults.N)
        family.add_argument(
            "--x-max", type=int, help="Integral point search bound (0 = size-dependent)", default=defaults.x_max
        )
        family.add_argument("--kappa-full", type=float, help="log exponent, full model", default=defaults.kappa_full)
        family.add_argument(
            "--kappa-partial", type=float, help="log exponent, partial model", default=defaults.kappa_partial
        )
        family.add_argument(
            "--grid", type=str, help="Grid: comma list, dyadic or linear", default=defaults.surface_grid
        )
        family.add_argument(
            "--density-grid", type=str, help="N-thresholds of density tables", default=defaults.density_grid
        )
        family.add_argument(
            "--density-kappa", type=str, help="Exponent of N / (log N)^kappa", default=str(defaults.density_kappa)
        )

        parser = argparse.ArgumentParser(
            description="Integral points on quadratic twist families",
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
            parents=[common],
        )
        sub = parser.add_subparsers(dest="command", required=True)
        fmt = argparse.ArgumentDefaultsHelpFormatter

        sub.add_parser("scan", parents=[common, family], formatter_class=fmt, help="Scan a twist family")
        sub.add_parser("density", parents=[common, family], formatter_class=fmt, help="Density table of a scan")

        moments = sub.add_parser("moments", parents=[common, family], formatter_class=fmt, help="Point-count moments")
        moments.add_argument("--k", type=str, help="Comma list of moment orders", default="1,2")

        surface = sub.add_parser("surface", parents=[common, family], formatter_class=fmt, help="Surface growth table")
        surface.add_argument("--cubic", type=str, help="Cubic coefficients c0,c1,c2,c3", default="1,0,0,1")
        surface.add_argument("--bound", type=int, help="Largest B of the grid", default=64)
        surface.add_argument("--diff", action="store_true", help="Compare lattice counts with brute force")

        rho = sub.add_parser("rho", parents=[common, family], formatter_class=fmt, help="Mean of rho(p)/p")
        rho.add_argument("--cubic", type=str, help="Cubic coefficients c0,c1,c2,c3", default="1,0,0,1")

        descent = sub.add_parser(
            "descent-verify", parents=[common, family], formatter_class=fmt, help="Check descent over a scan"
        )
        descent.add_argument("--dt-max", type=int, help="Largest D~ of the compact catalogue", default=0)

        pell = sub.add_parser("pell", parents=[common], formatter_class=fmt, help="Solve a x^2 - b y^2 = u")
        pell.add_argument("--a", type=int, required=True)
        pell.add_argument("--b", type=int, required=True)
        pell.add_argument("--u", type=int, required=True)
        pell.add_argument("--c", type=int, help="Second equation c y^2 - d z^2 = v")
        pell.add_argument("--d", type=int)
        pell.add_argument("--v", type=int)
        pell.add_argument("--bound", type=int, help="Largest x", default=10**6)

        sub.add_parser("construct", parents=[common, family], formatter_class=fmt, help="Constructed twists")

        verify = sub.add_parser("verify", parents=[common], formatter_class=fmt, help="Run the property suites")
        verify.add_argument("--suites", type=str, help="Comma list of suite names (default: all)")
        verify.add_argument("--corrupt", type=str, help="Suite whose inputs are corrupted on purpose")

        args = parser.parse_args(argv)
        # Subcommands without family options still need the attributes
        for name, value in (
            ("A", defaults.A),
            ("B", defaults.B),
            ("model", str(defaults.model)),
            ("N", defaults.N),
            ("x_max", defaults.x_max),
            ("kappa_full", defaults.kappa_full),
            ("kappa_partial", defaults.kappa_partial),
            ("grid", defaults.surface_grid),
            ("density_grid", defaults.density_grid),
            ("density_kappa", str(defaults.density_kappa)),
        ):
            if not hasattr(args, name):
                setattr(args, name, value)
        return args


# Initialize a global config instance
config = Config()

__all__ = ["COMMANDS", "Config", "ROOT_DIR", "config"]
