"""Structured logging for numerical runs."""
import logging
import sys
import traceback

logger = logging.getLogger("qspc")


class _StderrHandler(logging.StreamHandler):
	"""Writes to whatever sys.stderr is at emit time."""

	@property
	def stream(self):
		return sys.stderr

	@stream.setter
	def stream(self, value):
		pass


def configure_logging(level: int = logging.WARNING):
	"""Attach a stderr handler once and set the package log level."""
	if not logger.handlers:
		handler = _StderrHandler()
		handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
		logger.addHandler(handler)
	logger.setLevel(level)


def log_info(title: str, message: str):
	"""Log an informational message."""
	logger.info("%s - %s", title, message)


def log_warning(title: str, message: str):
	"""Log a recoverable numerical condition."""
	logger.warning("%s - %s", title, message)


def log_error(title: str, message: str, exc: Exception | None = None):
	"""Log an error, with the active traceback when an exception is given."""
	if exc:
		tb = traceback.format_exc()
		logger.error("%s - %s\n%s", title, message, tb)
	else:
		logger.error("%s - %s", title, message)
