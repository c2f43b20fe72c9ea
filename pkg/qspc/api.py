"""Payload-level entry points.

Each function takes decoded JSON payloads and plain options and returns the
uniform ok()/error() envelope; errors carry a code and the CLI exit status.
"""
import functools

from qspc.codec.serialization import decode_any, decode_poly, encode_cheb, encode_laurent, encode_poly, payload_basis
from qspc.config import get_settings
from qspc.numerics.poly import ComplexPoly
from qspc.utils.errors import ERROR_CODES, InvalidInputError, QspcError, error, error_from_exception, ok
from qspc.utils.logging import log_error


def api_method(title: str):
	"""Turn raised errors into error envelopes; unexpected ones are logged."""

	def decorator(func):
		@functools.wraps(func)
		def wrapper(*args, **kwargs):
			try:
				return func(*args, **kwargs)
			except QspcError as exc:
				return error_from_exception(exc)
			except Exception as exc:
				log_error(f"{title} failed", str(exc), exc=exc)
				return error(f"{title} failed", {"detail": str(exc)}, code=ERROR_CODES["APP_ERROR"])

		return wrapper

	return decorator


@api_method("Complement")
def complement(
	payload: dict,
	delta: float | None = None,
	n_points: int | None = None,
	eps: float | None = None,
	auto: bool = False,
	target: float | None = None,
	accuracy: float | None = None,
	strict: bool = False,
	max_n: int | None = None,
):
	"""Dispatch to the known-gap run (--delta/--n), the downscaled run (--eps) or auto_N."""
	from qspc.services.complement_service import (
		ComplementOptions,
		auto_N,
		complementary_downscaled,
		complementary_known_delta,
		required_N,
	)

	settings = get_settings()
	P = decode_poly(payload)
	d = P.degree
	zero_handling = "strict" if strict else settings.zero_handling

	if auto:
		opts = ComplementOptions(n_points=d + 1, zero_handling=zero_handling, clamp_floor=settings.clamp_floor)
		result = auto_N(P, target or settings.accuracy, max_n, opts)
	elif eps is not None and delta is None and n_points is None:
		opts = ComplementOptions(n_points=d + 1, zero_handling=zero_handling, clamp_floor=settings.clamp_floor)
		result = complementary_downscaled(P, eps, opts)
	elif delta is not None or n_points is not None:
		if n_points is None:
			n_points = max(required_N(accuracy or settings.accuracy, delta, max(d, 1)), d + 1)
		opts = ComplementOptions(n_points=n_points, zero_handling=zero_handling, clamp_floor=settings.clamp_floor)
		result = complementary_known_delta(P, opts)
	else:
		raise InvalidInputError("choose one of --delta/--n, --eps or --auto")

	return ok("Complement computed", encode_poly(result.q, result.to_diagnostics()))


@api_method("Required N")
def required_n(eps: float, delta: float, d: int):
	from qspc.services.complement_service import required_N

	return ok("Required N", {"N": required_N(eps, delta, d)})


@api_method("Generate")
def generate(family: str, **params):
	from qspc.services.family_service import build_family

	built = build_family(family, **params)
	if isinstance(built, ComplexPoly):
		return ok("Polynomial generated", encode_poly(built))
	return ok("Series generated", encode_cheb(built))


@api_method("Metrics")
def metrics(p_payload: dict, q_payload: dict, oversample: int | None = None):
	from qspc.services.metrics_service import metric_report

	P, Q = decode_poly(p_payload), decode_poly(q_payload)
	report = metric_report(P, Q, oversample or get_settings().oversample)
	return ok("Metrics computed", report.to_dict())


@api_method("Convert")
def convert(payload: dict, source: str, target: str = "circle", mode: str = "full", complement_of: int | None = None):
	"""Re-index coefficients between the cheb, laurent and circle conventions.

	With complement_of=d a circle input is treated as the complement Q of a
	degree-d P and mapped to the Laurent G with i G(z) = z^-d Q(z^2).
	"""
	from qspc.services.convention_service import (
		cheb_to_circle,
		circle_to_laurent,
		circle_to_laurent_complement,
		laurent_to_circle,
	)

	expected = {"cheb": "chebyshev", "laurent": "laurent", "circle": "monomial"}[source]
	if payload_basis(payload) != expected:
		raise InvalidInputError(f"input basis is {payload_basis(payload)}, expected {expected}", field="basis")
	value = decode_any(payload)

	if source == "cheb":
		circle = cheb_to_circle(value, mode)
	elif source == "laurent":
		circle = laurent_to_circle(value)
	else:
		circle = value

	if target == "circle":
		if source == "circle":
			raise InvalidInputError("input is already a circle polynomial")
		return ok("Converted", encode_poly(circle))
	if target == "laurent":
		if source == "laurent":
			raise InvalidInputError("input is already a Laurent polynomial")
		if complement_of is not None:
			return ok("Converted", encode_laurent(circle_to_laurent_complement(circle, complement_of)))
		return ok("Converted", encode_laurent(circle_to_laurent(circle)))
	raise InvalidInputError(f"unknown target {target!r}", field="to")


@api_method("Oracle check")
def oracle_check(degrees, delta: float = 0.2, seeds: int = 5, target: float = 1e-12):
	from qspc.jobs.oracle_check import run_oracle_check

	report = run_oracle_check(degrees, delta=delta, seeds=range(seeds), target_loss=target)
	if report["passed"]:
		return ok("Oracle agreement", report)
	return error("Oracle disagreement", report, code=ERROR_CODES["DOMAIN_ERROR"])
