"""Independent checks for the FFT pipeline.

- canonical Q from the roots of A(z) = z^d (1 - P(z) P*(1/z)), keeping the
  roots outside the disk and half of each circle root
- Q(z) off the circle by trapezoidal quadrature of the Schwarz integral
- the Fourier multiplier against an explicitly built discrete Hilbert transform

These are desk-scale references: root finding is limited to small degree.
"""
import math

import attrs
import numpy as np
from numpy.polynomial import polynomial as npoly

from qspc.config import get_settings
from qspc.numerics.dft import UnitGridSamples, forward, frequencies, inverse, next_power_of_two
from qspc.numerics.poly import DEFAULT_OVERSAMPLE, ComplexPoly, eval_horner, eval_roots_of_unity
from qspc.services.complement_service import apply_pi_multiplier, auto_N
from qspc.utils.errors import DomainError, GapViolationError, RootPairingError
from qspc.utils.logging import log_warning
from qspc.utils.validation import require_at_least

MAX_ORACLE_DEGREE = 32
CONTOUR_EXCLUSION = 0.01


@attrs.frozen(eq=False)
class RootClassification:
	"""Roots of A(z) split by position relative to the unit circle.

	on_circle holds (t_j, alpha_j) with alpha_j half the multiplicity found;
	leading is |Q_bar|, the magnitude making |Q|^2 = 1 - |P|^2 on the circle.
	"""

	inside: list
	on_circle: list
	outside: list
	leading: complex
	d0: int
	d1: int
	pairing_residual: float = 0.0

	@property
	def total_multiplicity(self) -> int:
		return len(self.inside) + len(self.outside) + 2 * sum(alpha for _, alpha in self.on_circle)

	def q_roots(self) -> list:
		"""Roots of the canonical Q with multiplicity."""
		roots = []
		for t, alpha in self.on_circle:
			roots.extend([t] * alpha)
		roots.extend(w for w, _ in self.outside)
		return roots


def gap_polynomial(P: ComplexPoly) -> np.ndarray:
	"""Ascending coefficients of z^d (1 - P(z) P*(1/z))."""
	d = P.degree
	a = -np.correlate(P.coeffs, P.coeffs, "full")
	a[d] += 1.0
	return a


def _polished_roots(a: np.ndarray) -> np.ndarray:
	roots = np.linalg.eigvals(npoly.polycompanion(a))
	derivative = npoly.polyder(a)
	values = npoly.polyval(roots, a)
	slopes = npoly.polyval(roots, derivative)
	floor = 1e-10 * np.abs(a).max()
	safe = np.abs(slopes) > floor
	step = np.zeros_like(roots)
	step[safe] = values[safe] / slopes[safe]
	small = np.abs(step) < 1e-3 * np.maximum(1.0, np.abs(roots))
	return roots - np.where(small, step, 0)


def _cluster(points: np.ndarray, radius: float) -> list[list[complex]]:
	clusters: list[list[complex]] = []
	for r in points:
		for group in clusters:
			if abs(r - np.mean(group)) <= radius:
				group.append(r)
				break
		else:
			clusters.append([r])
	return clusters


def _grid_peak(P: ComplexPoly) -> tuple[complex, float]:
	size = next_power_of_two(DEFAULT_OVERSAMPLE * (P.degree + 1))
	values = eval_roots_of_unity(P, size).values
	gap = 1.0 - np.abs(values) ** 2
	m = int(np.argmax(gap))
	return complex(np.exp(2j * np.pi * m / size)), float(gap[m])


def classify_roots(P: ComplexPoly, tol: float | None = None) -> RootClassification:
	"""Find and classify the 2d roots of A(z) = z^d (1 - P(z) P*(1/z))."""
	tol = get_settings().circle_tol if tol is None else tol
	P = ComplexPoly(P.coeffs)
	d = P.degree
	if d > MAX_ORACLE_DEGREE:
		raise DomainError(f"root oracle limited to degree {MAX_ORACLE_DEGREE}, got {d}", degree=d)
	z_peak, peak_gap = _grid_peak(P)
	if d == 0:
		return RootClassification([], [], [], complex(math.sqrt(max(peak_gap, 0.0))), 0, 0)
	if P.coeffs[0] == 0:
		raise DomainError("p0 = 0: factor out z^k first (|z^k P| = |P| on the circle)", field="p0")

	roots = _polished_roots(gap_polynomial(P))
	distance = np.abs(np.abs(roots) - 1.0)
	near = distance <= math.sqrt(tol)

	on_circle = []
	for group in _cluster(roots[near], radius=10.0 * math.sqrt(tol)):
		if len(group) % 2:
			raise RootPairingError(
				f"circle-root pairing failed: {len(group)} roots near {np.mean(group):.6g}",
				cluster_size=len(group),
			)
		center = np.mean(group)
		on_circle.append((complex(center / abs(center)), len(group) // 2))

	off = roots[~near]
	inside = [(complex(r), 1) for r in off[np.abs(off) < 1.0]]
	outside = [(complex(r), 1) for r in off[np.abs(off) > 1.0]]
	if len(inside) != len(outside):
		raise RootPairingError(
			f"circle-root pairing failed: {len(inside)} roots inside, {len(outside)} outside",
			inside=len(inside),
			outside=len(outside),
		)

	residual = 0.0
	if outside:
		v = np.array([r for r, _ in inside])
		residual = max(float(np.min(np.abs(w * np.conj(v) - 1.0))) for w, _ in outside)

	cls = RootClassification(inside, on_circle, outside, 1.0 + 0j, len(on_circle), len(outside), residual)
	q0_at_peak = abs(npoly.polyval(z_peak, npoly.polyfromroots(cls.q_roots())))
	leading = math.sqrt(max(peak_gap, 0.0)) / q0_at_peak
	return attrs.evolve(cls, leading=complex(leading))


def canonical_q_from_roots(cls: RootClassification, P: ComplexPoly) -> ComplexPoly:
	"""Canonical Q with a real positive constant coefficient, at degree deg P."""
	roots = cls.q_roots()
	coeffs = cls.leading * npoly.polyfromroots(roots) if roots else np.array([cls.leading])
	q0 = coeffs[0]
	if q0 != 0:
		coeffs = coeffs * (np.conj(q0) / abs(q0))
	padded = np.zeros(max(P.degree + 1, coeffs.size), dtype=np.complex128)
	padded[: coeffs.size] = coeffs
	return ComplexPoly(padded, trim=False)


def canonical_complement(P: ComplexPoly, tol: float | None = None) -> ComplexPoly:
	"""Root-based canonical Q for any P; a zero constant term is factored out first."""
	nonzero = np.flatnonzero(P.coeffs)
	shift = int(nonzero[0]) if nonzero.size else 0
	core = ComplexPoly(P.coeffs[shift:])
	q = canonical_q_from_roots(classify_roots(core, tol), core)
	return ComplexPoly(q.padded(P.degree + 1), trim=False)


def contour_q(P: ComplexPoly, z: complex, quad_points: int | None = None) -> complex:
	"""Q(z) off the circle from the Schwarz integral of log(1 - |P|^2).

	Assumes 1 - |P|^2 > 0 on the circle. The trapezoid rule is used since
	the integrand is periodic and analytic.
	"""
	quad_points = get_settings().contour_quad_points if quad_points is None else quad_points
	require_at_least("quad_points", quad_points, P.degree + 1)
	z = complex(z)
	if abs(abs(z) - 1.0) < CONTOUR_EXCLUSION:
		raise DomainError(
			f"|z|={abs(z):.6g} is within {CONTOUR_EXCLUSION} of the circle: use grid representation",
			field="z",
		)
	nodes = np.exp(2j * np.pi * np.arange(quad_points) / quad_points)
	gap = 1.0 - np.abs(eval_roots_of_unity(P, quad_points).values) ** 2
	if np.any(gap <= 0):
		m = int(np.argmax(gap <= 0))
		raise GapViolationError(f"gap violated at grid point {m}", grid_point=m, value=float(gap[m]))
	u = 0.5 * np.mean((nodes + z) / (nodes - z) * np.log(gap))
	if abs(z) < 1.0:
		return complex(np.exp(u))
	p_star = np.conj(eval_horner(P, 1.0 / np.conj(z)))
	return complex((1.0 - eval_horner(P, z) * p_star) * np.exp(u))


def hilbert_kernel(N: int) -> np.ndarray:
	"""Dense N x N discrete Hilbert transform with eigenvalue i sgn(n) on e^{i n theta}.

	Built from explicit exponential sums, independent of the FFT path.
	"""
	n = frequencies(N)
	m = np.arange(N)
	# reduce m*n mod N in integers so phases stay below 2 pi
	basis = np.exp(2j * np.pi * np.mod(np.outer(m, n), N) / N)
	return (basis * (1j * np.sign(n))) @ basis.conj().T / N


def hilbert_multiplier_check(N: int, x: UnitGridSamples | None = None, seed: int = 0) -> float:
	"""max |Pi x - (x - i H x)/2| on grid values x (random unless given)."""
	require_at_least("N", N, 4)
	if x is None:
		rng = np.random.Generator(np.random.Philox(seed))
		x = UnitGridSamples(rng.normal(size=N) + 1j * rng.normal(size=N))
	if x.n_points != N:
		raise DomainError(f"sample vector has {x.n_points} points, expected {N}", n_points=x.n_points)
	values = x.values / max(1.0, float(np.abs(x.values).max()))
	via_fft = inverse(apply_pi_multiplier(forward(UnitGridSamples(values)))).values
	via_kernel = 0.5 * (values - 1j * (hilbert_kernel(N) @ values))
	return float(np.max(np.abs(via_fft - via_kernel)))


def oracle_agreement(P: ComplexPoly, target_loss: float = 1e-12, max_N: int | None = None) -> dict:
	"""Compare the pipeline (auto_N) with the root-based canonical Q."""
	pipeline = auto_N(P, target_loss, max_N)
	reference = canonical_complement(P)
	diff = float(np.max(np.abs(pipeline.q.coeffs - reference.coeffs)))
	if diff > 1e-6:
		log_warning("Oracle disagreement", f"d={P.degree} max coefficient difference {diff:.3e}")
	return {
		"degree": P.degree,
		"max_diff": diff,
		"loss": pipeline.loss,
		"n_used": pipeline.n_used,
	}
