"""Discrete Fourier transforms on the roots of unity.

Normalization is forward-scaled:

    forward:  modes(n) = (1/N) sum_m x[m] w^(-n m)
    inverse:  x[m]     = sum_n modes(n) w^(+n m)        (no 1/N)

with w = exp(2 pi i / N). Storage index k holds signed frequency n = k for
k <= N // 2 and n = k - N otherwise, so for even N the Nyquist mode N/2
counts as positive.
"""
import attrs
import numpy as np

from qspc.utils.cache import memoize_table
from qspc.utils.errors import DomainError


def _as_complex_vector(values) -> np.ndarray:
	array = np.array(values, dtype=np.complex128).reshape(-1)
	array.flags.writeable = False
	return array


@attrs.frozen(eq=False)
class UnitGridSamples:
	"""Values of a function at the N-th roots of unity, values[m] = f(w^m)."""

	values: np.ndarray = attrs.field(converter=_as_complex_vector)

	def __attrs_post_init__(self):
		if self.values.size == 0:
			raise DomainError("grid must contain at least one point")

	@property
	def n_points(self) -> int:
		return int(self.values.size)

	def __len__(self):
		return self.n_points


@attrs.frozen(eq=False)
class SpectrumModes:
	"""Length-N mode vector indexed by signed frequency (see module docstring)."""

	modes: np.ndarray = attrs.field(converter=_as_complex_vector)

	def __attrs_post_init__(self):
		if self.modes.size == 0:
			raise DomainError("spectrum must contain at least one mode")

	@property
	def n_points(self) -> int:
		return int(self.modes.size)

	def __len__(self):
		return self.n_points

	def mode(self, n: int) -> complex:
		"""Coefficient of frequency n."""
		return complex(self.modes[storage_index(n, self.n_points)])

	@property
	def frequencies(self) -> np.ndarray:
		return frequencies(self.n_points)

	@classmethod
	def from_frequency_map(cls, n_points: int, entries: dict) -> "SpectrumModes":
		"""Build a mode vector from {frequency: value}; absent frequencies are zero."""
		modes = np.zeros(n_points, dtype=np.complex128)
		for n, value in entries.items():
			modes[storage_index(n, n_points)] = value
		return cls(modes)


@memoize_table
def frequencies(n_points: int) -> np.ndarray:
	"""Signed frequency of every storage index, read-only."""
	k = np.arange(n_points)
	table = np.where(k <= n_points // 2, k, k - n_points)
	table.flags.writeable = False
	return table


def storage_index(n: int, n_points: int) -> int:
	"""Storage index of signed frequency n."""
	low = -((n_points + 1) // 2) + 1
	high = n_points // 2
	if not low <= n <= high:
		raise DomainError(f"frequency {n} outside [{low}, {high}] for N={n_points}", frequency=n)
	return n % n_points


def forward(x: UnitGridSamples) -> SpectrumModes:
	"""Grid values to modes, 1/N scaled."""
	return SpectrumModes(np.fft.fft(x.values, norm="forward"))


def inverse(m: SpectrumModes) -> UnitGridSamples:
	"""Modes to grid values, unscaled."""
	return UnitGridSamples(np.fft.ifft(m.modes, norm="forward"))


def next_power_of_two(n: int) -> int:
	"""Smallest power of two >= n (1 for n <= 1)."""
	n = int(n)
	if n <= 1:
		return 1
	return 1 << (n - 1).bit_length()
