import unittest
from unittest.mock import MagicMock, call, patch

from callee import Regex

from common.constants import Component, LogLevel, Model
from common.exceptions import ConfigurationError
from descent.audit import audit_corpus
from descent.exceptional import CatalogueEntry
from twists.scan import scan_family


class AuditTestCase(unittest.TestCase):
    def setUp(self):
        self.mock_logger = MagicMock()
        patch("config.project_config.config.get_logger", return_value=self.mock_logger).start()

    def tearDown(self):
        patch.stopall()


class TestAuditCorpus(AuditTestCase):
    def test_full_model(self):
        audit = audit_corpus(scan_family(1, 2, Model.FULL, 30, 2000), 3)
        self.assertTrue(audit.passed, audit.violations[:3])
        self.assertGreater(audit.checked, 0)
        self.assertGreaterEqual(audit.compact, 2)
        self.assertIn(CatalogueEntry(6, 3, 9, 2, 3), audit.catalogue)
        self.assertIn((6, 300), [(p.D, p.x) for p in audit.exceptional])

    def test_partial_model(self):
        audit = audit_corpus(scan_family(1, 1, Model.PARTIAL, 15, 500), 5)
        self.assertTrue(audit.passed, audit.violations[:3])
        self.assertEqual(audit.compact, 0)
        self.assertEqual(audit.catalogue, [])
        self.assertIn((15, 9, 63), [(p.D, p.x, p.y) for p in audit.exceptional])

    def test_short_model(self):
        with self.assertRaises(ConfigurationError):
            audit_corpus(scan_family(0, 1, Model.SHORT, 5, 100), 3)

    def test_failed_conditions_are_reported(self):
        corpus = scan_family(1, 2, Model.FULL, 15, 400)
        with patch("descent.audit.local_conditions_full", return_value=False):
            audit = audit_corpus(corpus, 3)
        self.assertFalse(audit.passed)
        self.assertEqual(len(audit.violations), audit.checked)
        self.mock_logger.log.assert_any_call(LogLevel.DEBUG, Regex(r"\[VIOLATION\] local conditions fail for"))

    def test_missing_compact_point(self):
        corpus = scan_family(1, 2, Model.FULL, 10, 400)
        corpus.records[6] = [r for r in corpus.records[6] if r.component != Component.COMPACT]
        audit = audit_corpus(corpus, 3)
        self.assertFalse(audit.passed)
        self.assertIn(
            "compact point CatalogueEntry(D=6, x=3, y=9, Dt=2, g=3) missing from the scan", audit.violations
        )

    def test_to_dict(self):
        audit = audit_corpus(scan_family(1, 2, Model.FULL, 10, 400), 3)
        summary = audit.to_dict()
        self.assertEqual(summary["violations"], [])
        self.assertTrue(summary["passed"])
        self.assertEqual(summary["catalogue"], 3)

    def test_logs_summary(self):
        audit_corpus(scan_family(1, 2, Model.FULL, 10, 400), 3)
        self.assertIn(
            call(LogLevel.NORMAL, Regex(r"Descent audit: \d+ points checked, \d+ compact, 0 violations")),
            self.mock_logger.log.call_args_list,
        )


if __name__ == "__main__":
    unittest.main()
