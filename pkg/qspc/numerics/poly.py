"""Complex polynomial and Laurent polynomial primitives.

All other modules build on these types. Values are immutable after
construction: coefficient arrays are flagged read-only.
"""
import numpy as np

from qspc.numerics.dft import SpectrumModes, UnitGridSamples, forward, inverse, next_power_of_two
from qspc.utils.errors import DomainError, InsufficientGridError

DEFAULT_OVERSAMPLE = 16


def _frozen(values) -> np.ndarray:
	array = np.array(values, dtype=np.complex128).reshape(-1)
	array.flags.writeable = False
	return array


class ComplexPoly:
	"""Polynomial c_0 + c_1 z + ... + c_d z^d with complex coefficients.

	Trailing zero coefficients are trimmed on construction (a lone zero
	constant is kept). Pass trim=False to keep a declared degree with a zero
	leading coefficient; complementary polynomials use this so that
	deg Q = deg P holds even when the top coefficient vanishes numerically.
	"""

	__slots__ = ("_coeffs",)

	def __init__(self, coeffs, trim: bool = True):
		array = np.array(coeffs, dtype=np.complex128).reshape(-1)
		if array.size == 0:
			array = np.zeros(1, dtype=np.complex128)
		if trim:
			nonzero = np.flatnonzero(array)
			array = array[: nonzero[-1] + 1] if nonzero.size else array[:1]
		self._coeffs = _frozen(array)

	@property
	def coeffs(self) -> np.ndarray:
		return self._coeffs

	@property
	def degree(self) -> int:
		return self._coeffs.size - 1

	def __len__(self):
		return self._coeffs.size

	def __call__(self, z):
		return eval_horner(self, z)

	def __repr__(self):
		return f"ComplexPoly(degree={self.degree}, coeffs={self._coeffs.tolist()!r})"

	def padded(self, n: int) -> np.ndarray:
		"""Coefficients zero-padded to length n (a fresh, writable array)."""
		if n < self._coeffs.size:
			raise InsufficientGridError(
				f"insufficient grid: {n} points for degree {self.degree}", n_points=n, degree=self.degree
			)
		out = np.zeros(n, dtype=np.complex128)
		out[: self._coeffs.size] = self._coeffs
		return out

	def scaled(self, factor: complex) -> "ComplexPoly":
		return ComplexPoly(self._coeffs * factor, trim=False)

	def rotated(self, alpha: float) -> "ComplexPoly":
		"""P(e^{i alpha} z); same modulus profile, shifted around the circle."""
		powers = np.exp(1j * alpha * np.arange(self._coeffs.size))
		return ComplexPoly(self._coeffs * powers, trim=False)


class LaurentPoly:
	"""Laurent polynomial sum_k c_k z^(min_exp + k).

	Exact zeros at either end are trimmed; an all-zero polynomial is stored
	as the single coefficient 0 at exponent 0.
	"""

	__slots__ = ("_coeffs", "_min_exp")

	def __init__(self, min_exp: int, coeffs):
		array = np.array(coeffs, dtype=np.complex128).reshape(-1)
		nonzero = np.flatnonzero(array)
		if nonzero.size == 0:
			min_exp, array = 0, np.zeros(1, dtype=np.complex128)
		else:
			min_exp = int(min_exp) + int(nonzero[0])
			array = array[nonzero[0] : nonzero[-1] + 1]
		self._min_exp = min_exp
		self._coeffs = _frozen(array)

	@property
	def min_exp(self) -> int:
		return self._min_exp

	@property
	def max_exp(self) -> int:
		return self._min_exp + self._coeffs.size - 1

	@property
	def coeffs(self) -> np.ndarray:
		return self._coeffs

	@property
	def exponents(self) -> np.ndarray:
		return np.arange(self._min_exp, self.max_exp + 1)

	def coefficient(self, n: int) -> complex:
		if self._min_exp <= n <= self.max_exp:
			return complex(self._coeffs[n - self._min_exp])
		return 0j

	def as_dict(self) -> dict:
		return {int(n): complex(c) for n, c in zip(self.exponents, self._coeffs)}

	def __call__(self, z):
		z = np.asarray(z, dtype=np.complex128)
		return np.polynomial.polynomial.polyval(z, self._coeffs) * z ** float(self._min_exp)

	def __repr__(self):
		return f"LaurentPoly(min_exp={self._min_exp}, coeffs={self._coeffs.tolist()!r})"


def eval_horner(p: ComplexPoly, z):
	"""Evaluate p at z (scalar or array) by Horner's scheme."""
	z = np.asarray(z, dtype=np.complex128)
	acc = np.zeros_like(z)
	for c in p.coeffs[::-1]:
		acc = acc * z + c
	return complex(acc) if acc.ndim == 0 else acc


def eval_roots_of_unity(p: ComplexPoly, N: int) -> UnitGridSamples:
	"""values[m] = P(w_N^m) via one unscaled inverse transform of the padded coefficients."""
	if N < p.degree + 1:
		raise InsufficientGridError(f"insufficient grid: N={N} < degree+1={p.degree + 1}", n_points=N)
	return inverse(SpectrumModes(p.padded(N)))


def conj_reciprocal(p: ComplexPoly) -> ComplexPoly:
	"""z^d P*(1/z): coefficients conj(c_{d-n})."""
	return ComplexPoly(np.conj(p.coeffs[::-1]))


def abs_sq_on_grid(P: ComplexPoly, Q: ComplexPoly | None, n_points: int) -> np.ndarray:
	"""|P|^2 (+ |Q|^2) at the n_points-th roots of unity."""
	values = np.abs(eval_roots_of_unity(P, n_points).values) ** 2
	if Q is not None:
		values = values + np.abs(eval_roots_of_unity(Q, n_points).values) ** 2
	return values


def one_minus_abs_sq_laurent(P: ComplexPoly, Q: ComplexPoly | None = None) -> LaurentPoly:
	"""Laurent coefficients of |P|^2 + |Q|^2 - 1 on the circle, powers -d..d.

	An exact complementary pair gives zero. Computed as a linear
	autocorrelation through a transform of size >= 2d + 2.
	"""
	d = P.degree
	if Q is not None and Q.degree != d:
		raise DomainError(f"degree mismatch: deg P={d}, deg Q={Q.degree}", deg_p=d, deg_q=Q.degree)
	size = next_power_of_two(2 * d + 2)
	grid = abs_sq_on_grid(P, Q, size) - 1.0
	modes = forward(UnitGridSamples(grid)).modes
	coeffs = np.concatenate([modes[size - d :], modes[: d + 1]]) if d else modes[:1]
	return LaurentPoly(-d, coeffs)


def laurent_coefficients(P: ComplexPoly, Q: ComplexPoly | None = None) -> np.ndarray:
	"""Dense coefficient vector of |P|^2 + |Q|^2 - 1 for powers -d..d (untrimmed)."""
	lp = one_minus_abs_sq_laurent(P, Q)
	d = P.degree
	out = np.zeros(2 * d + 1, dtype=np.complex128)
	for n, c in zip(lp.exponents, lp.coeffs):
		out[n + d] = c
	return out


def sup_norm_on_circle(p: ComplexPoly, oversample: int = DEFAULT_OVERSAMPLE, refine: bool = False) -> float:
	"""Grid estimate of max |P| on the unit circle.

	The grid has next_power_of_two(oversample * (degree + 1)) points, so the
	result is a lower bound of the true supremum. With refine=True the best
	grid candidates are polished by Newton steps on |P(e^{it})|^2, which
	tightens the bound without ever exceeding the true maximum.
	"""
	if oversample < 1:
		raise DomainError("oversample must be >= 1", oversample=oversample)
	size = next_power_of_two(oversample * (p.degree + 1))
	modulus = np.abs(eval_roots_of_unity(p, size).values)
	best = float(modulus.max())
	if not refine or p.degree == 0:
		return best
	candidates = np.argsort(modulus)[-4:]
	thetas = 2 * np.pi * candidates / size
	return max(best, _refine_peaks(p, thetas, step_limit=np.pi / size))


def _refine_peaks(p: ComplexPoly, thetas: np.ndarray, step_limit: float, iterations: int = 8) -> float:
	n = np.arange(p.degree + 1)
	c = p.coeffs
	theta = np.array(thetas, dtype=float)
	for _ in range(iterations):
		basis = np.exp(1j * np.outer(theta, n))
		v = basis @ c
		dv = basis @ (1j * n * c)
		d2v = basis @ (-(n**2) * c)
		grad = 2 * np.real(np.conj(v) * dv)
		curv = 2 * np.real(np.conj(dv) * dv + np.conj(v) * d2v)
		step = np.where(curv < 0, grad / np.where(curv < 0, curv, -1.0), 0.0)
		theta = theta - np.clip(step, -step_limit, step_limit)
	values = np.abs(np.exp(1j * np.outer(theta, n)) @ c)
	return float(values.max())
