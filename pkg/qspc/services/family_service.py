"""Test-polynomial families.

random       normal coefficients scaled to a sup norm of 1 - delta
hamiltonian  Jacobi-Anger series of e^{-i tau x}
eigfilter    Chebyshev interpolant of the eigenvalue filter g_M(x; a)
signum       Bessel-I series approximating sgn(x) outside (-a, a)

Chebyshev families are returned as ChebSeries on [-1, 1]; module
convention_service maps them onto the unit circle.
"""
import math

import attrs
import numpy as np

from qspc.numerics.poly import DEFAULT_OVERSAMPLE, ComplexPoly, sup_norm_on_circle
from qspc.numerics.special import bessel_j_sequence, lambert_w0, scaled_bessel_i_sequence
from qspc.utils.errors import DomainError, InvalidInputError
from qspc.utils.validation import require_at_least, require_open_interval

PARITIES = ("even", "odd", "mixed")
FAMILIES = ("random", "hamiltonian", "eigfilter", "signum")
FAMILY_PARAMS = {
	"random": ("d",),
	"hamiltonian": ("tau", "eps"),
	"eigfilter": ("a", "m"),
	"signum": ("a", "eps"),
}
EIG_FILTER_SHRINK = 1.0 - 1e-10
SIGNUM_EPS_LIMIT = 3.0 / math.sqrt(8.0 * math.pi * math.log(2.0))

# i^{-n} for n mod 4, exact
_MINUS_I_POWERS = np.array([1, -1j, -1, 1j], dtype=np.complex128)


def _cheb_coeffs(values) -> np.ndarray:
	array = np.array(values, dtype=np.complex128).reshape(-1)
	nonzero = np.flatnonzero(array)
	array = array[: nonzero[-1] + 1] if nonzero.size else np.zeros(1, dtype=np.complex128)
	array.flags.writeable = False
	return array


@attrs.frozen(eq=False)
class ChebSeries:
	"""sum_n coeffs[n] T_n(x) on [-1, 1]; trailing zeros are trimmed."""

	coeffs: np.ndarray = attrs.field(converter=_cheb_coeffs)
	parity: str = "mixed"

	def __attrs_post_init__(self):
		if self.parity not in PARITIES:
			raise DomainError(f"parity must be one of {', '.join(PARITIES)}", field="parity")
		if self.parity == "even" and np.any(self.coeffs[1::2]):
			raise DomainError("even series has nonzero odd coefficients", field="parity")
		if self.parity == "odd" and np.any(self.coeffs[0::2]):
			raise DomainError("odd series has nonzero even coefficients", field="parity")

	@property
	def degree(self) -> int:
		return self.coeffs.size - 1

	@property
	def is_real(self) -> bool:
		return not np.any(self.coeffs.imag)

	def evaluate(self, x):
		"""Clenshaw evaluation at x (scalar or array)."""
		return np.polynomial.chebyshev.chebval(np.asarray(x, dtype=float), self.coeffs)

	def scaled(self, factor: float) -> "ChebSeries":
		return ChebSeries(self.coeffs * factor, parity=self.parity)


@attrs.frozen
class RandomSpec:
	degree: int
	delta: float = 0.0
	seed: int = 0

	def __attrs_post_init__(self):
		require_at_least("degree", self.degree, 0)
		if not 0.0 <= self.delta < 1.0:
			raise DomainError(f"delta must lie in [0, 1), got {self.delta}", field="delta", value=self.delta)

	def generator(self) -> np.random.Generator:
		"""Counter-based generator; equal seeds give equal streams on every platform."""
		return np.random.Generator(np.random.Philox(self.seed))


@attrs.frozen
class SignumParams:
	a: float
	eps: float
	beta: float
	M: int


def random_poly(spec: RandomSpec) -> ComplexPoly:
	"""Gaussian coefficients scaled so max |P| on the circle is 1 - delta.

	The maximum is located on the 16x grid and refined by Newton steps, so
	the grid norm never exceeds 1 - delta.
	"""
	rng = spec.generator()
	n = spec.degree + 1
	raw = ComplexPoly(rng.normal(size=n) + 1j * rng.normal(size=n), trim=False)
	peak = sup_norm_on_circle(raw, DEFAULT_OVERSAMPLE, refine=True)
	return raw.scaled((1.0 - spec.delta) / peak)


def jacobi_anger(tau: float, eps: float) -> ChebSeries:
	"""Truncated Jacobi-Anger series of e^{-i tau x}, scaled by 1/(1+eps).

	M = ceil(e tau / 2 + log(1/eps)) keeps the truncation error below eps.
	"""
	if tau < 0:
		raise DomainError(f"tau must be >= 0, got {tau}", field="tau", value=tau)
	require_open_interval("eps", eps, 0.0, 1.0)
	M = math.ceil(0.5 * math.e * tau + math.log(1.0 / eps))
	bessel = bessel_j_sequence(tau, M)
	coeffs = 2.0 * _MINUS_I_POWERS[np.arange(M + 1) % 4] * bessel
	coeffs[0] = bessel[0]
	return ChebSeries(coeffs / (1.0 + eps), parity="mixed")


def _log_cheb_outside(M: int, t):
	# log T_M(t) for t >= 1
	u = M * np.arccosh(t)
	return u + np.log1p(np.exp(-2.0 * u)) - math.log(2.0)


def eig_filter_value(x, a: float, M: int):
	"""g_M(x; a) = T_M(y(x)) / T_M(y(0)), y(x) = (2x^2 - (1+a^2)) / (1-a^2).

	Numerator and denominator are combined in log space outside [-1, 1].
	"""
	x = np.asarray(x, dtype=float)
	y = (2.0 * x**2 - (1.0 + a**2)) / (1.0 - a**2)
	y0 = (1.0 + a**2) / (1.0 - a**2)
	log_den = _log_cheb_outside(M, y0)
	den_sign = -1.0 if M % 2 else 1.0

	inside = np.abs(y) <= 1.0
	out = np.empty_like(y)
	out[inside] = np.cos(M * np.arccos(y[inside])) * np.exp(-log_den)
	outside = ~inside
	num_sign = np.where(y[outside] < 0, den_sign, 1.0)
	out[outside] = num_sign * np.exp(_log_cheb_outside(M, np.abs(y[outside])) - log_den)
	return out * den_sign


def eig_filter(a: float, M: int) -> ChebSeries:
	"""Even degree-2M interpolant of g_M(.; a) on 2M+1 Chebyshev nodes, shrunk by 1 - 1e-10."""
	require_open_interval("a", a, 0.0, 1.0)
	require_at_least("M", M, 0)
	K = 2 * M + 1
	theta = (2 * np.arange(K) + 1) * np.pi / (2 * K)
	values = eig_filter_value(np.cos(theta), a, M)
	n = np.arange(K)
	coeffs = (2.0 / K) * (np.cos(np.outer(n, theta)) @ values)
	coeffs[0] = values.mean()
	coeffs[1::2] = 0.0
	return ChebSeries(coeffs * EIG_FILTER_SHRINK, parity="even")


def signum_params(a: float, eps: float) -> SignumParams:
	"""beta and M guaranteeing |sgn(x) - h_M(x)| < eps for |x| >= a."""
	require_open_interval("a", a, 0.0, 1.0)
	require_open_interval("eps", eps, 0.0, SIGNUM_EPS_LIMIT)
	w18 = lambert_w0(18.0 / (math.pi * eps**2))
	beta = math.ceil(w18 / (4.0 * a**2))
	w72 = lambert_w0(72.0 / (math.pi * eps**2))
	log_term = math.log(3.0 / (math.sqrt(2.0 * math.pi) * eps * math.sqrt(w72)))
	inner = lambert_w0((log_term / beta - 1.0) / math.e)
	ratio = w72 * (log_term - beta) / inner
	M = math.ceil(math.sqrt(ratio)) if ratio > 0 else 1
	return SignumParams(a=a, eps=eps, beta=float(beta), M=M)


def signum_poly(params: SignumParams) -> ChebSeries:
	"""Odd degree-(2M+1) series h_M(x; beta) / (1 + 2 eps / 3)."""
	M, beta = params.M, params.beta
	scaled_i = scaled_bessel_i_sequence(beta, M)
	coeffs = np.zeros(2 * M + 2)
	coeffs[1] = scaled_i[0]
	n = np.arange(1, M + 1)
	term = np.where(n % 2, -1.0, 1.0) * scaled_i[1:]
	np.add.at(coeffs, 2 * n + 1, term / (2 * n + 1))
	np.add.at(coeffs, 2 * n - 1, -term / (2 * n - 1))
	coeffs *= 2.0 * math.sqrt(2.0 * beta / math.pi)
	return ChebSeries(coeffs / (1.0 + 2.0 * params.eps / 3.0), parity="odd")


def build_family(family: str, **params):
	"""Dispatch to a family generator by name.

	random returns a ComplexPoly; the others return a ChebSeries.
	"""
	if family in FAMILY_PARAMS:
		missing = [name for name in FAMILY_PARAMS[family] if params.get(name) is None]
		if missing:
			raise InvalidInputError(f"family {family} needs {', '.join('--' + m for m in missing)}", fields=", ".join(missing))
	if family == "random":
		return random_poly(RandomSpec(degree=params["d"], delta=params.get("delta") or 0.0, seed=params.get("seed") or 0))
	if family == "hamiltonian":
		return jacobi_anger(params["tau"], params["eps"])
	if family == "eigfilter":
		return eig_filter(params["a"], params["m"])
	if family == "signum":
		return signum_poly(signum_params(params["a"], params["eps"]))
	raise InvalidInputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}", field="family")
