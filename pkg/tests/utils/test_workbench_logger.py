import unittest
from io import StringIO
from unittest.mock import MagicMock, call, patch

from callee import Regex

from common.constants import LogLevel
from utils.workbench_logger import WorkbenchLogger, log_operation


class TestWorkbenchLogger(unittest.TestCase):
    def setUp(self):
        # Create string buffers to capture output
        self.stdout = StringIO()
        self.stderr = StringIO()
        self.logger = WorkbenchLogger(level=LogLevel.DEBUG, stdout=self.stdout, stderr=self.stderr)

    def tearDown(self):
        self.stdout.close()
        self.stderr.close()
        patch.stopall()

    def create_dummy_operations(self, logger):
        # Names match the summary cases of the decorator
        @log_operation(logger=logger)
        def truncated_S(N: int, spec=None) -> int:
            return 3

        @log_operation(logger=logger)
        def enumerate_solutions(a: int, b: int, u: int, bound: int) -> list:
            return [(3, 2), (17, 12)]

        @log_operation(logger=logger)
        def mystery(value: int) -> int:
            return value

        return truncated_S, enumerate_solutions, mystery

    def test_logging_levels(self):
        """Results go to stdout, progress and debug lines to stderr"""
        # Test SILENT level
        silent_logger = WorkbenchLogger(level=LogLevel.SILENT, stdout=StringIO(), stderr=StringIO())
        silent_logger.log(LogLevel.SILENT, "PASS")
        silent_logger.log(LogLevel.NORMAL, "Wrote output/density.csv")
        silent_logger.log(LogLevel.DEBUG, "[VIOLATION] local conditions fail")

        self.assertIn("PASS", silent_logger.stdout.getvalue())
        self.assertEqual("", silent_logger.stderr.getvalue())

        # Test NORMAL level
        normal_logger = WorkbenchLogger(level=LogLevel.NORMAL, stdout=StringIO(), stderr=StringIO())
        normal_logger.log(LogLevel.SILENT, "PASS")
        normal_logger.log(LogLevel.NORMAL, "Wrote output/density.csv")
        normal_logger.log(LogLevel.DEBUG, "[VIOLATION] local conditions fail")

        self.assertIn("PASS", normal_logger.stdout.getvalue())
        self.assertIn("Wrote output/density.csv", normal_logger.stderr.getvalue())
        self.assertNotIn("[VIOLATION] local conditions fail", normal_logger.stderr.getvalue())

    def test_summary_lines(self):
        """Known operations get their one-line summary"""
        truncated_S, enumerate_solutions, _ = self.create_dummy_operations(self.logger)

        truncated_S(3)
        enumerate_solutions(1, 2, 1, 100)

        stderr_output = self.stderr.getvalue()
        self.assertIn("S(3) = 3", stderr_output)
        self.assertIn("Pell: 2 solutions of 1x^2 - 2y^2 = 1 up to 100", stderr_output)
        self.assertEqual("", self.stdout.getvalue())

    def test_entry_and_exit_traces(self):
        truncated_S, _, _ = self.create_dummy_operations(self.logger)
        truncated_S(N=5)
        stderr_output = self.stderr.getvalue()
        self.assertIn("Entering truncated_S with args=() kwargs={'N': 5}", stderr_output)
        self.assertIn("Exiting truncated_S with result: 3", stderr_output)

    def test_unknown_operation(self):
        mock_logger = MagicMock()
        _, _, mystery = self.create_dummy_operations(mock_logger)
        self.assertEqual(mystery(7), 7)
        mock_logger.log.assert_has_calls(
            [
                call(LogLevel.DEBUG, "Entering mystery with args=(7,) kwargs={}"),
                call(LogLevel.DEBUG, Regex(r"\[ERROR\] Logger could not find matching case for mystery")),
                call(LogLevel.DEBUG, "Exiting mystery with result: 7"),
            ]
        )

    def test_global_logger_lookup(self):
        """Without an explicit logger the decorator asks the config at call time"""
        mock_logger = MagicMock()
        patch("config.project_config.config.get_logger", return_value=mock_logger).start()

        @log_operation()
        def truncated_S(N: int) -> int:
            return 0

        truncated_S(10)
        mock_logger.log.assert_any_call(LogLevel.NORMAL, "S(10) = 0")

    def test_normal_level_hides_traces(self):
        logger = WorkbenchLogger(level=LogLevel.NORMAL, stdout=StringIO(), stderr=StringIO())
        truncated_S, _, _ = self.create_dummy_operations(logger)
        truncated_S(3)
        self.assertEqual(logger.stderr.getvalue(), "S(3) = 3\n")


if __name__ == "__main__":
    unittest.main()
