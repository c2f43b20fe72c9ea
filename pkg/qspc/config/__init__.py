"""Runtime configuration for complementary-polynomial runs.

Settings are an immutable snapshot of defaults plus environment overrides.
The active snapshot is cached and can be invalidated after the environment
changes (tests do this).
"""
import os
import threading

import attrs

from qspc.utils.cache import cache_delete, cache_get_or_set, make_ttl_cache
from qspc.utils.errors import ConfigurationError

ZERO_HANDLING_MODES = ("strict", "clamp")

_settings_cache = make_ttl_cache(maxsize=1, ttl=300)
_settings_lock = threading.Lock()
CACHE_KEY = "qspc_settings"


@attrs.frozen
class Settings:
	"""Tunable defaults shared by the services and the CLI."""

	oversample: int = 16
	zero_handling: str = "clamp"
	clamp_floor: float = 1e-300
	circle_tol: float = 1e-8
	auto_max_n: int = 2**22
	accuracy: float = 1e-12
	contour_quad_points: int = 2**14
	threads: int | None = None

	def validate(self):
		if self.zero_handling not in ZERO_HANDLING_MODES:
			raise ConfigurationError(
				f"zero_handling must be one of {', '.join(ZERO_HANDLING_MODES)}", field="zero_handling"
			)
		if not self.clamp_floor > 0:
			raise ConfigurationError("clamp_floor must be positive", field="clamp_floor")
		if self.oversample < 1:
			raise ConfigurationError("oversample must be >= 1", field="oversample")
		if self.threads is not None and self.threads < 1:
			raise ConfigurationError("QSPC_THREADS must be >= 1", field="threads")
		if self.auto_max_n < 2:
			raise ConfigurationError("auto_max_n must be >= 2", field="auto_max_n")
		return self

	@classmethod
	def from_env(cls, environ=None) -> "Settings":
		"""Build settings from defaults overridden by QSPC_* variables."""
		environ = os.environ if environ is None else environ
		overrides = {}
		try:
			if environ.get("QSPC_THREADS"):
				overrides["threads"] = int(environ["QSPC_THREADS"])
			if environ.get("QSPC_OVERSAMPLE"):
				overrides["oversample"] = int(environ["QSPC_OVERSAMPLE"])
			if environ.get("QSPC_ZERO_HANDLING"):
				overrides["zero_handling"] = environ["QSPC_ZERO_HANDLING"].strip().lower()
			if environ.get("QSPC_CLAMP_FLOOR"):
				overrides["clamp_floor"] = float(environ["QSPC_CLAMP_FLOOR"])
			if environ.get("QSPC_AUTO_MAX_N"):
				overrides["auto_max_n"] = int(environ["QSPC_AUTO_MAX_N"])
		except ValueError as e:
			raise ConfigurationError(f"Cannot parse environment setting: {e}")
		return cls(**overrides).validate()

	def get_executor_config(self) -> dict:
		"""Keyword arguments for the bench worker pool."""
		return {"max_workers": self.threads}

	def get_complement_options(self, n_points: int):
		"""ComplementOptions for a run at n_points using these defaults."""
		from qspc.services.complement_service import ComplementOptions

		return ComplementOptions(
			n_points=n_points,
			zero_handling=self.zero_handling,
			clamp_floor=self.clamp_floor,
		)


def get_settings() -> Settings:
	"""Get the cached settings snapshot."""
	return cache_get_or_set(_settings_cache, CACHE_KEY, Settings.from_env, lock=_settings_lock)


def invalidate_settings():
	cache_delete(_settings_cache, CACHE_KEY, lock=_settings_lock)
