"""Error codes, exception types and response helpers for the qspc package."""

ERROR_CODES = {
	"VALIDATION_ERROR": "validation_error",
	"DOMAIN_ERROR": "domain_error",
	"GAP_VIOLATION": "gap_violation",
	"INSUFFICIENT_GRID": "insufficient_grid",
	"CONVERGENCE_ERROR": "convergence_error",
	"ROOT_PAIRING_ERROR": "root_pairing_error",
	"PARSE_ERROR": "parse_error",
	"IO_ERROR": "io_error",
	"CONFIGURATION_ERROR": "configuration_error",
	"APP_ERROR": "app_error",
}

# CLI exit statuses: 2 for math/domain failures, 3 for input/output problems.
EXIT_STATUS = {
	ERROR_CODES["VALIDATION_ERROR"]: 3,
	ERROR_CODES["DOMAIN_ERROR"]: 2,
	ERROR_CODES["GAP_VIOLATION"]: 2,
	ERROR_CODES["INSUFFICIENT_GRID"]: 2,
	ERROR_CODES["CONVERGENCE_ERROR"]: 2,
	ERROR_CODES["ROOT_PAIRING_ERROR"]: 2,
	ERROR_CODES["PARSE_ERROR"]: 3,
	ERROR_CODES["IO_ERROR"]: 3,
	ERROR_CODES["CONFIGURATION_ERROR"]: 3,
	ERROR_CODES["APP_ERROR"]: 1,
}


class QspcError(Exception):
	"""Base error. Carries a stable code and structured data for reports."""

	code = ERROR_CODES["APP_ERROR"]

	def __init__(self, message: str, **data):
		super().__init__(message)
		self.message = message
		self.data = data

	@property
	def exit_status(self) -> int:
		return EXIT_STATUS.get(self.code, 1)


class DomainError(QspcError, ValueError):
	code = ERROR_CODES["DOMAIN_ERROR"]


class InsufficientGridError(DomainError):
	code = ERROR_CODES["INSUFFICIENT_GRID"]


class GapViolationError(DomainError):
	"""1-|P|^2 is nonpositive at a grid point while running in strict mode."""

	code = ERROR_CODES["GAP_VIOLATION"]


class ConvergenceError(DomainError):
	code = ERROR_CODES["CONVERGENCE_ERROR"]


class RootPairingError(DomainError):
	code = ERROR_CODES["ROOT_PAIRING_ERROR"]


class ParseError(QspcError, ValueError):
	code = ERROR_CODES["PARSE_ERROR"]


class ConfigurationError(QspcError, ValueError):
	code = ERROR_CODES["CONFIGURATION_ERROR"]


class InvalidInputError(QspcError, ValueError):
	"""Arguments are well-formed but describe an invalid request."""

	code = ERROR_CODES["VALIDATION_ERROR"]


class StorageError(QspcError):
	"""Reading or writing an input/output file failed."""

	code = ERROR_CODES["IO_ERROR"]


def ok(message: str = "OK", data=None):
	"""Return a consistent success payload."""
	return {
		"ok": True,
		"message": message,
		"data": data or {},
	}


def error(message: str, data=None, code: str | None = None):
	"""Return a consistent error payload."""
	payload = {
		"ok": False,
		"message": message,
		"data": data or {},
	}
	if code:
		payload["code"] = code
		payload["exit_status"] = EXIT_STATUS.get(code, 1)
	return payload


def error_from_exception(exc: QspcError):
	"""Build an error payload from a raised QspcError."""
	return error(exc.message, _jsonable(exc.data), code=exc.code)


def _jsonable(data: dict) -> dict:
	# Drop values that cannot appear in a JSON report (e.g. result objects).
	return {k: v for k, v in data.items() if isinstance(v, (int, float, str, bool, type(None)))}
