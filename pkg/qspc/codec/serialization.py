"""Coefficient JSON: schemas, encoding and decoding.

Monomial polynomials:  {"degree": d, "coeffs": [[re, im], ...]}
Chebyshev series:      {"basis": "chebyshev", "degree": M, "parity": ..., "coeffs": [...]}
Laurent polynomials:   {"basis": "laurent", "min_exp": k, "coeffs": [...]}

Output is written with sorted keys and two-space indentation so identical
inputs produce byte-identical files.
"""
from pathlib import Path

import numpy as np
import orjson

from qspc.numerics.poly import ComplexPoly, LaurentPoly
from qspc.services.family_service import PARITIES, ChebSeries
from qspc.utils.errors import ParseError, StorageError
from qspc.utils.validation import coerce_complex, require_fields, validate_payload

_COEFFICIENT = {
	"anyOf": [
		{"type": "number"},
		{"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
	]
}

COEFFICIENT_SCHEMA = {
	"type": "object",
	"required": ["degree", "coeffs"],
	"properties": {
		"basis": {"const": "monomial"},
		"degree": {"type": "integer", "minimum": 0},
		"coeffs": {"type": "array", "minItems": 1, "items": _COEFFICIENT},
		"diagnostics": {"type": "object"},
	},
}

CHEBYSHEV_SCHEMA = {
	"type": "object",
	"required": ["basis", "degree", "coeffs"],
	"properties": {
		"basis": {"const": "chebyshev"},
		"degree": {"type": "integer", "minimum": 0},
		"parity": {"enum": list(PARITIES)},
		"coeffs": {"type": "array", "minItems": 1, "items": _COEFFICIENT},
	},
}

LAURENT_SCHEMA = {
	"type": "object",
	"required": ["basis", "min_exp", "coeffs"],
	"properties": {
		"basis": {"const": "laurent"},
		"min_exp": {"type": "integer"},
		"coeffs": {"type": "array", "minItems": 1, "items": _COEFFICIENT},
	},
}

BASES = ("monomial", "chebyshev", "laurent")

_DUMP_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE


def _pairs(coeffs) -> list[list[float]]:
	return [[float(c.real), float(c.imag)] for c in np.asarray(coeffs, dtype=np.complex128)]


def _complex_list(raw: list) -> np.ndarray:
	return np.array([coerce_complex(c) for c in raw], dtype=np.complex128)


def _check_length(payload: dict, expected: int, what: str):
	if len(payload["coeffs"]) != expected:
		raise ParseError(
			f"{what}: coeffs has {len(payload['coeffs'])} entries, expected {expected}", field="coeffs"
		)


def encode_poly(p: ComplexPoly, diagnostics: dict | None = None) -> dict:
	payload = {"degree": p.degree, "coeffs": _pairs(p.coeffs)}
	if diagnostics is not None:
		payload["diagnostics"] = diagnostics
	return payload


def decode_poly(payload: dict) -> ComplexPoly:
	"""ComplexPoly from a monomial payload; the declared degree is kept."""
	validate_payload(payload, COEFFICIENT_SCHEMA, "coefficient file")
	_check_length(payload, payload["degree"] + 1, "coefficient file")
	return ComplexPoly(_complex_list(payload["coeffs"]), trim=False)


def encode_cheb(f: ChebSeries) -> dict:
	return {"basis": "chebyshev", "degree": f.degree, "parity": f.parity, "coeffs": _pairs(f.coeffs)}


def decode_cheb(payload: dict) -> ChebSeries:
	validate_payload(payload, CHEBYSHEV_SCHEMA, "chebyshev file")
	_check_length(payload, payload["degree"] + 1, "chebyshev file")
	return ChebSeries(_complex_list(payload["coeffs"]), parity=payload.get("parity", "mixed"))


def encode_laurent(F: LaurentPoly) -> dict:
	return {"basis": "laurent", "min_exp": F.min_exp, "coeffs": _pairs(F.coeffs)}


def decode_laurent(payload: dict) -> LaurentPoly:
	validate_payload(payload, LAURENT_SCHEMA, "laurent file")
	return LaurentPoly(payload["min_exp"], _complex_list(payload["coeffs"]))


def payload_basis(payload) -> str:
	if not isinstance(payload, dict):
		raise ParseError("coefficient file must contain a JSON object")
	basis = payload.get("basis", "monomial")
	if basis not in BASES:
		raise ParseError(f"unknown basis {basis!r}", field="basis")
	return basis


def decode_any(payload: dict):
	"""Decode by the payload's basis field (monomial when absent)."""
	decoders = {"monomial": decode_poly, "chebyshev": decode_cheb, "laurent": decode_laurent}
	return decoders[payload_basis(payload)](payload)


def dumps(obj) -> bytes:
	return orjson.dumps(obj, option=_DUMP_OPTIONS)


def loads(data: bytes | str):
	try:
		return orjson.loads(data)
	except orjson.JSONDecodeError as e:
		raise ParseError(f"invalid JSON: {e}")


def read_json(path) -> dict:
	try:
		data = Path(path).read_bytes()
	except OSError as e:
		raise StorageError(f"cannot read {path}: {e.strerror or e}", path=str(path))
	return loads(data)


def write_json(path, obj):
	try:
		Path(path).write_bytes(dumps(obj))
	except OSError as e:
		raise StorageError(f"cannot write {path}: {e.strerror or e}", path=str(path))


def read_poly(path) -> ComplexPoly:
	payload = read_json(path)
	require_fields(payload if isinstance(payload, dict) else {}, ["coeffs"])
	return decode_poly(payload)
