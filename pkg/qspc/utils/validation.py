"""Input and payload validation helpers."""

from jsonschema import Draft202012Validator
from jsonschema.exceptions import ValidationError

from qspc.utils.errors import DomainError, ParseError


def require_fields(payload: dict, fields: list[str]):
	"""Raise a parse error if any required fields are missing."""
	missing = [f for f in fields if f not in payload]
	if missing:
		raise ParseError(f"missing fields: {', '.join(missing)}", fields=", ".join(missing))


def validate_payload(payload, schema: dict, what: str = "payload"):
	"""Validate a decoded JSON payload against a JSON schema.

	Raises ParseError naming the first offending field.
	"""
	try:
		Draft202012Validator(schema).validate(payload)
	except ValidationError as e:
		location = "/".join(str(p) for p in e.absolute_path) or "<root>"
		raise ParseError(f"invalid {what} at {location}: {e.message}", field=location)


def coerce_complex(value) -> complex:
	"""Coerce a coefficient value to a complex number.

	Accepts [re, im] pairs, plain numbers and numeric strings.
	"""
	if isinstance(value, complex):
		return value
	if isinstance(value, (list, tuple)):
		if len(value) != 2:
			raise ParseError(f"coefficient pair must have 2 entries, got {len(value)}")
		return complex(float(value[0]), float(value[1]))
	try:
		if isinstance(value, str):
			return complex(value.replace(" ", ""))
		return complex(value)
	except (TypeError, ValueError) as e:
		raise ParseError(f"Cannot coerce {type(value).__name__} to complex: {e}")


def require_open_interval(name: str, value: float, low: float, high: float):
	"""Raise DomainError unless low < value < high."""
	if not (low < value < high):
		raise DomainError(f"{name} must lie in ({low}, {high}), got {value}", field=name, value=value)


def require_at_least(name: str, value, minimum):
	if value < minimum:
		raise DomainError(f"{name} must be >= {minimum}, got {value}", field=name, value=value)
