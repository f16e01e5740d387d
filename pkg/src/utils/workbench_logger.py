"""
Description: Workbench logging utility. Prints results and progress lines based on the configured level,
    and decorates the long-running operations with entry/exit traces and a one-line summary.
Sources:
    - https://medium.com/@kuldeepkumawat195/python-print-flush-complete-guide-learn-today-f42f87cbc38c
    - https://realpython.com/primer-on-python-decorators/
"""

import sys
from functools import wraps
from inspect import signature
from typing import Callable, TextIO

from common.constants import LogLevel


class WorkbenchLogger:
    """
    Hierarchical logging system with stream separation.
    Silent logs go to stdout, while Normal and Debug logs go to stderr.

    Usage:
        # Basic usage (uses sys.stdout/stderr by default)
        > logger = WorkbenchLogger(level=LogLevel.NORMAL)
        # Custom streams
        > with open('tables.log', 'w') as stdout, open('debug.log', 'w') as stderr:
        >   logger = WorkbenchLogger(level=LogLevel.DEBUG, stdout=stdout, stderr=stderr)
    """

    def __init__(
        self,
        level: LogLevel = LogLevel.NORMAL,
        stdout: TextIO | None = None,
        stderr: TextIO | None = None,
    ):
        self.level = level
        self._stdout = stdout
        self._stderr = stderr

    # None means the current sys stream
    @property
    def stdout(self) -> TextIO:
        return self._stdout or sys.stdout

    @property
    def stderr(self) -> TextIO:
        return self._stderr or sys.stderr

    def log(self, level: LogLevel, message: str):
        """
        Log message if level is sufficient

        Args:
            level (LogLevel): Logging level of the message
            message (str): Message string
        Note:
            - Silent level messages go to stdout
            - Normal and Debug level messages go to stderr
        """
        if self.level >= level:
            stream = self.stdout if level == LogLevel.SILENT else self.stderr
            print(f"{message}", file=stream, flush=True)


def _summary(op_name: str, params: dict, result) -> tuple[LogLevel, str]:
    match op_name:
        case "scan_family":
            return LogLevel.NORMAL, (
                f"Scan: A={params['A']} B={params['B']} {params['model']} N={params['N']}: "
                f"{len(result.records)} twists with points, {result.nontorsion_count} with non-torsion points"
            )

        case "construct_points":
            return LogLevel.NORMAL, f"Construction: {len(result)} twists with |D| <= {params['N']}"

        case "count_via_lattices" | "brute_count":
            count = result if isinstance(result, int) else result[0]
            return LogLevel.NORMAL, f"{op_name}: C={params['C']} B={params['B']} count={count}"

        case "truncated_S":
            return LogLevel.NORMAL, f"S({params['N']}) = {result}"

        case "enumerate_solutions":
            return LogLevel.NORMAL, (
                f"Pell: {len(result)} solutions of {params['a']}x^2 - {params['b']}y^2 = {params['u']} "
                f"up to {params['bound']}"
            )

        case "simultaneous_solve":
            return LogLevel.NORMAL, f"Pell system: {len(result)} shared solutions up to {params['bound']}"

        case "exceptional_scan":
            family = params["corpus"].params
            return LogLevel.NORMAL, f"Exceptional points: {len(result)} on {family.model} A={family.A} B={family.B}"

        case "audit_corpus":
            return LogLevel.NORMAL, (
                f"Descent audit: {result.checked} points checked, {result.compact} compact, "
                f"{len(result.violations)} violations"
            )

        case "run_suites":
            return LogLevel.NORMAL, f"Verification: {result.passed_count}/{len(result.suites)} suites passed"

        case _:  # Default case
            return LogLevel.DEBUG, (
                f"[ERROR] Logger could not find matching case for {op_name}, you should not be seeing this"
            )


def log_operation(logger: WorkbenchLogger | None = None):
    """
    A decorator that creates function decorators for workbench operation logging.

    Logging Levels:
        1. Silent: nothing from the decorator; results are printed by the commands
        2. Normal (default): one summary line per completed operation
        3. Debug: Outputs all Normal level items plus:
           - Function entry/exit traces
           - Detailed argument logging
           - Return value logging

    Usage Example:
        ```python
        @log_operation()
        def brute_count(C: BinaryCubic, B: int) -> int:
            ...
        ```

    Args:
        logger (WorkbenchLogger | None): Logger to write to; when omitted the global
            config logger is looked up on every call

    Returns:
        Callable: A decorator function that will wrap the target function with
                 logging functionality
    """

    def decorator(func: Callable) -> Callable:
        sig = signature(func)

        @wraps(func)
        def wrapper(*args, **kwargs):
            if logger is None:
                from config.project_config import config

                active = config.get_logger()
            else:
                active = logger
            op_name = func.__name__

            active.log(LogLevel.DEBUG, f"Entering {op_name} with args={args} kwargs={kwargs}")

            result = func(*args, **kwargs)

            bound = sig.bind(*args, **kwargs)
            bound.apply_defaults()
            level, message = _summary(op_name, bound.arguments, result)
            active.log(level, message)

            active.log(LogLevel.DEBUG, f"Exiting {op_name} with result: {result}")

            return result

        return wrapper

    return decorator
