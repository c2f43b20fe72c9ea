"""Complementarity error metrics.

phi:        sup over the circle of ||P|^2 + |Q|^2 - 1|, as a grid estimate
            (lower) plus the l1 coefficient sum (certified upper bound)
loss_tilde: l2 norm of the Laurent coefficients of |P|^2 + |Q|^2 - 1
"""
import math

import attrs
import numpy as np

from qspc.numerics.dft import next_power_of_two
from qspc.numerics.poly import DEFAULT_OVERSAMPLE, ComplexPoly, abs_sq_on_grid, laurent_coefficients
from qspc.utils.errors import DomainError

NORM_EQUIVALENCE_SLACK = 1e-10


@attrs.frozen
class MetricReport:
	phi_grid: float
	phi_l1_upper: float
	loss_tilde: float
	grid_size: int

	def to_dict(self) -> dict:
		return attrs.asdict(self)


def _check_degrees(P: ComplexPoly, Q: ComplexPoly):
	if P.degree != Q.degree:
		raise DomainError(
			f"degree mismatch: deg P={P.degree}, deg Q={Q.degree}", deg_p=P.degree, deg_q=Q.degree
		)


def _grid_size(d: int, oversample: int) -> int:
	if oversample < 1:
		raise DomainError("oversample must be >= 1", oversample=oversample)
	return next_power_of_two(oversample * (2 * d + 1))


def phi(P: ComplexPoly, Q: ComplexPoly, oversample: int = DEFAULT_OVERSAMPLE) -> tuple[float, float]:
	"""(phi_grid, phi_l1_upper) for the pair (P, Q)."""
	_check_degrees(P, Q)
	size = _grid_size(P.degree, oversample)
	deviation = abs_sq_on_grid(P, Q, size) - 1.0
	phi_grid = float(np.max(np.abs(deviation)))
	phi_l1_upper = float(np.sum(np.abs(laurent_coefficients(P, Q))))
	return phi_grid, phi_l1_upper


def loss_tilde(P: ComplexPoly, Q: ComplexPoly) -> float:
	_check_degrees(P, Q)
	return float(np.linalg.norm(laurent_coefficients(P, Q)))


def check_norm_equivalence(P: ComplexPoly, Q: ComplexPoly, slack: float = NORM_EQUIVALENCE_SLACK) -> bool:
	"""Whether phi/sqrt(2d+1) <= loss_tilde <= sqrt(2d+1) * phi holds.

	The left inequality uses the grid estimate of phi and the right one the
	l1 upper bound, so both directions are certified up to grid error.
	"""
	phi_grid, phi_l1_upper = phi(P, Q)
	loss = loss_tilde(P, Q)
	root = math.sqrt(2 * P.degree + 1)
	return phi_grid / root <= loss + slack and loss <= root * phi_l1_upper + slack


def metric_report(P: ComplexPoly, Q: ComplexPoly, oversample: int = DEFAULT_OVERSAMPLE) -> MetricReport:
	phi_grid, phi_l1_upper = phi(P, Q, oversample)
	return MetricReport(
		phi_grid=phi_grid,
		phi_l1_upper=phi_l1_upper,
		loss_tilde=loss_tilde(P, Q),
		grid_size=_grid_size(P.degree, oversample),
	)
