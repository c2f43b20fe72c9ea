"""Maps between Chebyshev, Laurent and circle-monomial conventions.

Every map is a re-indexing of coefficients. The GQSP helpers evaluate the
single-qubit product whose top row is (P(z), Q(z)).
"""
import attrs
import numpy as np

from qspc.numerics.dft import UnitGridSamples, forward
from qspc.numerics.poly import ComplexPoly, LaurentPoly
from qspc.services.family_service import ChebSeries
from qspc.utils.errors import DomainError

CONVERSION_MODES = ("full", "parity")
UNIT_CIRCLE_TOL = 1e-12


def _angles(values) -> np.ndarray:
	array = np.array(values, dtype=float).reshape(-1)
	array.flags.writeable = False
	return array


@attrs.frozen(eq=False)
class GqspPhases:
	lam: float
	phi: np.ndarray = attrs.field(converter=_angles)
	theta: np.ndarray = attrs.field(converter=_angles)

	def __attrs_post_init__(self):
		if self.phi.size == 0 or self.phi.size != self.theta.size:
			raise DomainError(
				f"phase lists must be nonempty and of equal length, got {self.phi.size} and {self.theta.size}"
			)

	@property
	def degree(self) -> int:
		return self.phi.size - 1

	@classmethod
	def random(cls, d: int, rng: np.random.Generator) -> "GqspPhases":
		return cls(
			lam=float(rng.uniform(-np.pi, np.pi)),
			phi=rng.uniform(-np.pi, np.pi, size=d + 1),
			theta=rng.uniform(-np.pi, np.pi, size=d + 1),
		)


def cheb_to_circle(f: ChebSeries, mode: str = "full") -> ComplexPoly:
	"""Substitute x = (z + 1/z)/2 (full) or x = (z^(1/2) + z^(-1/2))/2 (parity).

	full:   P(z) = z^M f(x), degree 2M
	parity: P(z) = z^(d/2) f(x), degree d; needs a definite parity matching d
	"""
	if mode not in CONVERSION_MODES:
		raise DomainError(f"mode must be one of {', '.join(CONVERSION_MODES)}", field="mode")
	d = f.degree
	n = np.arange(d + 1)
	half = f.coeffs / 2
	if mode == "full":
		p = np.zeros(2 * d + 1, dtype=np.complex128)
		np.add.at(p, d + n, half)
		np.add.at(p, d - n, half)
		return ComplexPoly(p)

	if f.parity == "mixed" or (f.parity == "even") != (d % 2 == 0):
		raise DomainError(f"parity mode needs a definite parity matching degree {d}, got {f.parity}", field="parity")
	keep = (n % 2) == (d % 2)
	p = np.zeros(d + 1, dtype=np.complex128)
	np.add.at(p, (d + n[keep]) // 2, half[keep])
	np.add.at(p, (d - n[keep]) // 2, half[keep])
	return ComplexPoly(p)


def laurent_to_circle(F: LaurentPoly, d: int | None = None) -> ComplexPoly:
	"""P(z) = z^(d/2) F(z^(1/2)), i.e. p_{(d+n)/2} = F_n."""
	span = max(abs(F.min_exp), abs(F.max_exp))
	d = span if d is None else d
	if d < span:
		raise DomainError(f"degree {d} below Laurent span {span}", field="d")
	# only nonzero terms carry parity; interior zero slots have the other one
	present = F.coeffs != 0
	exponents = F.exponents[present]
	if np.any((exponents + d) % 2):
		raise DomainError(f"Laurent polynomial lacks parity {d % 2}", field="parity")
	p = np.zeros(d + 1, dtype=np.complex128)
	p[(exponents + d) // 2] = F.coeffs[present]
	return ComplexPoly(p, trim=False)


def circle_to_laurent(P: ComplexPoly) -> LaurentPoly:
	"""Inverse of laurent_to_circle: F_{2k-d} = p_k."""
	d = P.degree
	coeffs = np.zeros(2 * d + 1, dtype=np.complex128)
	coeffs[::2] = P.coeffs
	return LaurentPoly(-d, coeffs)


def circle_to_laurent_complement(Q: ComplexPoly, d: int) -> LaurentPoly:
	"""G with i G(z) = z^(-d) Q(z^2)."""
	if Q.degree > d:
		raise DomainError(f"deg Q={Q.degree} exceeds d={d}", deg_q=Q.degree, d=d)
	padded = ComplexPoly(Q.padded(d + 1), trim=False)
	G = circle_to_laurent(padded)
	return LaurentPoly(G.min_exp, -1j * G.coeffs)


def _factor(phi: float, theta: float) -> np.ndarray:
	c, s = np.cos(theta), np.sin(theta)
	e = np.exp(1j * phi)
	return np.array([[e * c, s], [e * s, -c]], dtype=np.complex128)


def evaluate_gqsp_product(phases: GqspPhases, z: complex) -> np.ndarray:
	"""2x2 matrix of the GQSP sequence at z on the unit circle."""
	if abs(abs(z) - 1.0) > UNIT_CIRCLE_TOL:
		raise DomainError(f"|z| must be 1, got {abs(z)}", field="z")
	c0, s0 = np.cos(phases.theta[0]), np.sin(phases.theta[0])
	lam, phi0 = phases.lam, phases.phi[0]
	product = np.array(
		[
			[np.exp(1j * (lam + phi0)) * c0, np.exp(1j * lam) * s0],
			[np.exp(1j * phi0) * s0, -c0],
		],
		dtype=np.complex128,
	)
	shift = np.diag([z, 1.0]).astype(np.complex128)
	for phi, theta in zip(phases.phi[1:], phases.theta[1:]):
		product = product @ shift @ _factor(phi, theta)
	return product


def gqsp_unit(phases: GqspPhases, z: complex) -> complex:
	"""u_d(z) = (-1)^d z^d e^{i(lambda + sum phi)}."""
	d = phases.degree
	return (-1) ** d * z**d * np.exp(1j * (phases.lam + phases.phi.sum()))


def gqsp_polynomials(phases: GqspPhases) -> tuple[ComplexPoly, ComplexPoly]:
	"""(P, Q) read off the top row at d+1 roots of unity and interpolated."""
	n = phases.degree + 1
	grid = np.exp(2j * np.pi * np.arange(n) / n)
	rows = np.array([evaluate_gqsp_product(phases, z)[0] for z in grid])
	p = forward(UnitGridSamples(rows[:, 0])).modes
	q = forward(UnitGridSamples(rows[:, 1])).modes
	return ComplexPoly(p, trim=False), ComplexPoly(q, trim=False)
