"""In-process memo caches for builders, tensor spaces and lazily generated corners."""

from __future__ import annotations

import logging
import threading
from typing import Any, Callable, Dict, Hashable, Optional

logger = logging.getLogger(__name__)

# One lock for every cache: builders call other builders while holding it.
_cache_lock = threading.RLock()
_registry: Dict[str, "MemoCache"] = {}


class MemoCache:
    """Named, thread-safe memo table."""

    def __init__(self, name: str) -> None:
        self.name = name
        self._store: Dict[Hashable, Any] = {}

    def get(self, key: Hashable) -> Optional[Any]:
        with _cache_lock:
            return self._store.get(key)

    def get_or_create(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        """Return the cached value for key, building it with factory on a miss."""
        with _cache_lock:
            if key in self._store:
                return self._store[key]
            value = factory()
            self._store[key] = value
            logger.debug("cache %s: stored %r", self.name, key)
            return value

    def clear(self) -> None:
        with _cache_lock:
            self._store.clear()

    def __len__(self) -> int:
        with _cache_lock:
            return len(self._store)


def get_cache(name: str) -> MemoCache:
    """Return the shared cache registered under name."""
    with _cache_lock:
        cache = _registry.get(name)
        if cache is None:
            cache = MemoCache(name)
            _registry[name] = cache
        return cache


def cache_lock() -> threading.RLock:
    return _cache_lock


def clear_all_caches() -> None:
    """Drop every memoized object."""
    with _cache_lock:
        for cache in _registry.values():
            cache.clear()
