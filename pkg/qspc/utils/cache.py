"""In-process caches for grid tables and settings."""
import threading
from contextlib import AbstractContextManager

from cachetools import LRUCache, TTLCache, cached
from cachetools.keys import hashkey

_table_cache = LRUCache(maxsize=256)
_table_lock = threading.Lock()


def memoize_table(func):
	"""Thread-safe LRU memoization for pure functions of hashable arguments.

	Results are shared between callers and must be treated as read-only.
	"""
	return cached(_table_cache, key=lambda *args, **kwargs: hashkey(func.__name__, *args, **kwargs), lock=_table_lock)(
		func
	)


def make_ttl_cache(maxsize: int = 1, ttl: float = 300) -> TTLCache:
	return TTLCache(maxsize=maxsize, ttl=ttl)


def cache_get_or_set(cache, key, generator, lock: AbstractContextManager | None = None):
	"""Get from cache or generate and cache the value."""
	if lock is None:
		lock = _table_lock
	with lock:
		value = cache.get(key)
	if value is not None:
		return value
	value = generator()
	if value is not None:
		with lock:
			cache[key] = value
	return value


def cache_delete(cache, key, lock: AbstractContextManager | None = None):
	"""Delete a key from a cache if present."""
	with lock or _table_lock:
		cache.pop(key, None)


def clear_tables():
	with _table_lock:
		_table_cache.clear()
