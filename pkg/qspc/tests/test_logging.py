"""Tests for the logging helpers."""
import logging
import unittest

from qspc.utils.logging import configure_logging, log_error, log_info, log_warning, logger


class TestLogHelpers(unittest.TestCase):
    def setUp(self):
        configure_logging(logging.INFO)

    def tearDown(self):
        configure_logging(logging.WARNING)

    def test_info_and_warning(self):
        with self.assertLogs("qspc", level="INFO") as captured:
            log_info("auto_N step", "d=4 N=16")
            log_warning("Clamped grid points", "1 of 8 points")
        self.assertEqual(
            captured.output,
            ["INFO:qspc:auto_N step - d=4 N=16", "WARNING:qspc:Clamped grid points - 1 of 8 points"],
        )

    def test_error_with_traceback(self):
        with self.assertLogs("qspc", level="ERROR") as captured:
            try:
                raise ValueError("boom")
            except ValueError as e:
                log_error("Bench cell failed", "d=4 N=16", exc=e)
        self.assertIn("ValueError: boom", captured.output[0])

    def test_single_handler(self):
        configure_logging(logging.DEBUG)
        configure_logging(logging.WARNING)
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.level, logging.WARNING)


if __name__ == "__main__":
    unittest.main()
