"""Special functions used by the polynomial families.

Only what the families need: Bessel J_n(tau) for n = 0..M, exponentially
scaled modified Bessel e^{-beta} I_n(beta) for n = 0..M, and the principal
branch of the Lambert W function on real arguments.
"""
import math

import numpy as np

from qspc.utils.errors import DomainError

_RESCALE_AT = 1e250
_INV_E = math.exp(-1.0)


def bessel_j_sequence(tau: float, M: int) -> np.ndarray:
	"""J_0(tau)..J_M(tau) by Miller backward recurrence.

	The recurrence J_{n-1} = (2n/tau) J_n - J_{n+1} is run downward from an
	index well beyond both M and tau, then normalized with
	J_0 + 2 sum_k J_{2k} = 1.
	"""
	if tau < 0:
		raise DomainError(f"tau must be >= 0, got {tau}", field="tau", value=tau)
	if M < 0:
		raise DomainError(f"M must be >= 0, got {M}", field="M", value=M)
	M = int(M)
	if tau == 0:
		out = np.zeros(M + 1)
		out[0] = 1.0
		return out

	top = max(M, math.ceil(tau))
	start = top + 16 + int(math.sqrt(40 * top))
	values = np.zeros(start + 1)
	values[start] = 1.0
	j_next, j_cur = 0.0, 1.0
	for n in range(start, 0, -1):
		j_prev = 2.0 * n / tau * j_cur - j_next
		values[n - 1] = j_prev
		j_next, j_cur = j_cur, j_prev
		if abs(j_prev) > _RESCALE_AT:
			values[n - 1 :] /= _RESCALE_AT
			j_next /= _RESCALE_AT
			j_cur /= _RESCALE_AT

	norm = values[0] + 2.0 * values[2::2].sum()
	return values[: M + 1] / norm


def scaled_bessel_i_sequence(beta: float, M: int) -> np.ndarray:
	"""e^{-beta} I_0(beta)..e^{-beta} I_M(beta), never forming e^beta.

	Backward recurrence I_{n-1} = (2n/beta) I_n + I_{n+1}, normalized with
	e^{-beta}(I_0 + 2 sum_{n>=1} I_n) = 1. The start index covers the
	Gaussian tail exp(-n^2 / (2 beta)) of the sequence.
	"""
	if beta < 0:
		raise DomainError(f"beta must be >= 0, got {beta}", field="beta", value=beta)
	if M < 0:
		raise DomainError(f"M must be >= 0, got {M}", field="M", value=M)
	M = int(M)
	if beta == 0:
		out = np.zeros(M + 1)
		out[0] = 1.0
		return out

	start = M + 30 + int(math.sqrt(80.0 * beta))
	values = np.zeros(start + 1)
	values[start] = 1.0
	i_next, i_cur = 0.0, 1.0
	for n in range(start, 0, -1):
		i_prev = 2.0 * n / beta * i_cur + i_next
		values[n - 1] = i_prev
		i_next, i_cur = i_cur, i_prev
		if i_prev > _RESCALE_AT:
			values[n - 1 :] /= _RESCALE_AT
			i_next /= _RESCALE_AT
			i_cur /= _RESCALE_AT

	norm = values[0] + 2.0 * values[1:].sum()
	return values[: M + 1] / norm


def lambert_w0(x: float) -> float:
	"""Principal branch W_0(x) for real x >= -1/e.

	Starts from the branch-point series near -1/e and from
	log x - log log x elsewhere, then applies Halley's method.
	"""
	x = float(x)
	if math.isnan(x) or x < -_INV_E - 1e-15:
		raise DomainError(f"lambert_w0 needs x >= -1/e, got {x}", field="x", value=x)
	if x == 0.0:
		return 0.0
	if math.isinf(x):
		return math.inf
	branch_gap = x + _INV_E
	if branch_gap <= 1e-15:
		return -1.0

	if abs(branch_gap) <= 1.5:
		w = math.sqrt(2.0 * math.e * x + 2.0) - 1.0
	else:
		log_x = math.log(x)
		w = log_x - math.log(log_x)

	for _ in range(100):
		ew = math.exp(w)
		f = w * ew - x
		w1 = w + 1.0
		if w1 == 0.0:
			break
		dw = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1))
		w -= dw
		if abs(dw) < 0.7e-16 * (2.0 + abs(w)):
			break
	return w
