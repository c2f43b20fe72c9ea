"""Canonical complementary polynomial via FFT.

Pipeline for a grid of N roots of unity (all transforms from numerics.dft):

1. P(w^m) by one inverse transform of the zero-padded coefficients
2. log(1 - |P(w^m)|^2), strict or clamped at nonpositive points
3. forward transform to modes a_n
4. Fourier multiplier: halve a_0, keep n > 0, drop n < 0
5. inverse transform, pointwise exp gives Q on the grid
6. forward transform, keep coefficients 0..d

The result is rotated so its constant coefficient is real positive.
"""
import math

import attrs
import numpy as np

from qspc.config import ZERO_HANDLING_MODES, get_settings
from qspc.numerics.dft import SpectrumModes, UnitGridSamples, forward, frequencies, inverse, next_power_of_two
from qspc.numerics.poly import ComplexPoly, eval_roots_of_unity
from qspc.services.metrics_service import loss_tilde
from qspc.utils.errors import ConvergenceError, DomainError, GapViolationError, InsufficientGridError
from qspc.utils.logging import log_info, log_warning
from qspc.utils.validation import require_at_least, require_open_interval


@attrs.frozen
class ComplementOptions:
	n_points: int
	zero_handling: str = "clamp"
	clamp_floor: float = 1e-300

	def __attrs_post_init__(self):
		if self.zero_handling not in ZERO_HANDLING_MODES:
			raise DomainError(f"unknown zero_handling {self.zero_handling!r}", field="zero_handling")
		if not self.clamp_floor > 0:
			raise DomainError("clamp_floor must be positive", field="clamp_floor", value=self.clamp_floor)
		if self.n_points < 1:
			raise InsufficientGridError(f"insufficient grid: N={self.n_points}", n_points=self.n_points)

	@property
	def strict(self) -> bool:
		return self.zero_handling == "strict"


@attrs.frozen(eq=False)
class ComplementResult:
	"""Output coefficients plus diagnostics of one run."""

	q: ComplexPoly
	n_used: int
	grid_min_gap: float
	loss: float
	clamped_points: int = 0

	def to_diagnostics(self) -> dict:
		return {
			"n_used": self.n_used,
			"loss": self.loss,
			"grid_min_gap": self.grid_min_gap,
			"clamped_points": self.clamped_points,
		}


def suggest_rotation(n_points: int) -> float:
	"""Angle alpha for P(z) -> P(e^{i alpha} z) moving roots off an N-point grid."""
	return math.pi / (4 * n_points)


def _log_gap(P: ComplexPoly, N: int, opts: ComplementOptions) -> tuple[UnitGridSamples, float, int]:
	values = eval_roots_of_unity(P, N).values
	gap = 1.0 - (values.real**2 + values.imag**2)
	bad = np.flatnonzero(gap <= 0)
	if bad.size and opts.strict:
		m = int(bad[0])
		raise GapViolationError(f"gap violated at grid point {m}", grid_point=m, value=float(gap[m]))
	grid_min_gap = float(gap.min())
	if bad.size:
		gap = gap.copy()
		gap[bad] = opts.clamp_floor
	return UnitGridSamples(np.log(gap)), grid_min_gap, int(bad.size)


def log_gap_on_grid(P: ComplexPoly, N: int, opts: ComplementOptions) -> UnitGridSamples:
	"""log(1 - |P(w^m)|^2) at the N-th roots of unity."""
	samples, _, _ = _log_gap(P, N, opts)
	return samples


def apply_pi_multiplier(m: SpectrumModes) -> SpectrumModes:
	"""Halve mode 0, keep modes 1..N//2, zero the negative ones."""
	modes = np.where(frequencies(m.n_points) > 0, m.modes, 0)
	modes[0] = m.modes[0] / 2
	return SpectrumModes(modes)


def _canonical_phase(coeffs: np.ndarray) -> np.ndarray:
	q0 = coeffs[0]
	if q0 == 0:
		return coeffs
	out = coeffs * (np.conj(q0) / abs(q0))
	out[0] = abs(q0)
	return out


def complementary_known_delta(P: ComplexPoly, opts: ComplementOptions) -> ComplementResult:
	N = opts.n_points
	d = P.degree
	if N < d + 1:
		raise InsufficientGridError(f"insufficient grid: N={N} < degree+1={d + 1}", n_points=N, degree=d)

	log_gap, grid_min_gap, clamped = _log_gap(P, N, opts)
	half_modes = apply_pi_multiplier(forward(log_gap))
	q_on_grid = UnitGridSamples(np.exp(inverse(half_modes).values))
	coeffs = _canonical_phase(forward(q_on_grid).modes[: d + 1].copy())
	q = ComplexPoly(coeffs, trim=False)

	if clamped:
		log_warning(
			"Clamped grid points",
			f"{clamped} of {N} points had 1-|P|^2 <= 0; rotating P(z) -> P(e^(i a) z) "
			f"with a={suggest_rotation(N):.6g} moves roots off the grid",
		)
	return ComplementResult(
		q=q,
		n_used=N,
		grid_min_gap=grid_min_gap,
		loss=loss_tilde(P, q),
		clamped_points=clamped,
	)


def complementary(P: ComplexPoly, N: int) -> ComplementResult:
	"""Run the pipeline at N points with the configured zero handling."""
	return complementary_known_delta(P, get_settings().get_complement_options(N))


def required_N(eps: float, delta: float, d: int) -> int:
	"""Smallest N the error bound guarantees for accuracy eps and gap delta.

	N0 = ceil(2 / log r * log(8 log(1/delta) / (r - 1) / eps)),
	r = (1 / (1 - delta))^(1/d).
	"""
	require_open_interval("eps", eps, 0.0, 1.0)
	require_open_interval("delta", delta, 0.0, 1.0)
	require_at_least("d", d, 1)
	log_r = -math.log1p(-delta) / d
	r_minus_one = math.expm1(log_r)
	return math.ceil(2.0 / log_r * math.log(8.0 * math.log(1.0 / delta) / r_minus_one / eps))


def complementary_downscaled(P: ComplexPoly, eps: float, opts: ComplementOptions | None = None) -> ComplementResult:
	"""Complement for a polynomial with zero, unknown or small gap.

	P is scaled by (1 - eps/4) so that a gap of eps/4 exists, then the
	pipeline runs at the N the bound prescribes for accuracy eps/(5(d+1)).
	The reported loss is measured against the unscaled P. opts, when given,
	supplies zero handling; its n_points is ignored.
	"""
	require_open_interval("eps", eps, 0.0, 1.0)
	d = P.degree
	scaled = P.scaled(1.0 - eps / 4.0)
	N = max(required_N(eps / (5.0 * (d + 1)), eps / 4.0, max(d, 1)), d + 1)
	log_info("Downscaled complement", f"d={d} eps={eps:g} N={N}")
	template = opts or get_settings().get_complement_options(N)
	result = complementary_known_delta(scaled, attrs.evolve(template, n_points=N))
	return attrs.evolve(result, loss=loss_tilde(P, result.q))


def auto_N(
	P: ComplexPoly,
	target_loss: float,
	max_N: int | None = None,
	opts: ComplementOptions | None = None,
) -> ComplementResult:
	"""Double N from the next power of two >= 2(d+1) until the loss target is met.

	opts, when given, supplies zero handling; its n_points is ignored.
	Raises ConvergenceError carrying the best loss once N passes max_N.
	"""
	settings = get_settings()
	max_N = settings.auto_max_n if max_N is None else max_N
	d = P.degree
	if not target_loss > 0:
		raise DomainError("target loss must be positive", field="target_loss", value=target_loss)
	if max_N < d + 1:
		raise InsufficientGridError(f"insufficient grid: max_N={max_N} < degree+1={d + 1}", n_points=max_N)
	template = opts or settings.get_complement_options(d + 1)

	N = min(next_power_of_two(2 * (d + 1)), max_N)
	best = None
	while N <= max_N:
		result = complementary_known_delta(P, attrs.evolve(template, n_points=N))
		log_info("auto_N step", f"d={d} N={N} loss={result.loss:.3e}")
		if result.loss <= target_loss:
			return result
		if best is None or result.loss < best.loss:
			best = result
		N *= 2

	raise ConvergenceError(
		f"loss target {target_loss:g} not reached up to N={max_N}; best loss {best.loss:.3e} at N={best.n_used}",
		best_loss=best.loss,
		best_n=best.n_used,
		best_result=best,
	)
