"""
Twist Workbench

Description: Command line entry point of the twist workbench. Scans quadratic twist families for
    integral points, builds density and moment tables, counts points on the cubic surface
    C(x1, x2) = x3^2 x4, checks the square-class descent over scanned corpora, solves Pell-type
    equations and runs the property suites.
Usage:
    PYTHONPATH=./src python src/main.py scan -A 1 -B 2 --model full -N 100 --x-max 100000
"""

import sys

from common.constants import ExitCode, LogLevel
from config.project_config import config
from utils.command_handler import handle_command


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point of the workbench.

    Returns:
        int: 0 on success, 1 when a verification failed, 2 for a usage error
    """
    # argparse exits with status 2 on its own for malformed command lines
    try:
        config.initialize(sys.argv[1:] if argv is None else argv)
    except ValueError as e:
        config.get_logger().log(LogLevel.SILENT, f"[ERROR] - {str(e)}")
        return ExitCode.USAGE_ERROR

    logger = config.get_logger()
    args = config.get_args()
    run_config = config.get_run_config()

    try:
        return handle_command(args, run_config)

    # Bad input surfaces as a WorkbenchError, which is a ValueError
    except ValueError as e:
        logger.log(LogLevel.SILENT, f"[ERROR] - {str(e)}")
        return ExitCode.USAGE_ERROR
    except Exception as e:
        logger.log(LogLevel.DEBUG, f"[ERROR] - An unexpected error occurred: {str(e)}")
        raise


if __name__ == "__main__":
    sys.exit(main())
