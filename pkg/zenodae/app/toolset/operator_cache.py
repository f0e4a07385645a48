# zenodae/app/toolset/operator_cache.py

import hashlib
import threading
import time
from typing import Any, Callable, Dict, Optional
from .base_imports import logger


class OperatorCache:
    """In-memory cache for assembled operators, keyed by family and mesh"""

    def __init__(self, max_entries: int = 16):
        self.cache = {}
        self.max_entries = max_entries
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def _generate_cache_key(self, family: str, n: int) -> str:
        return hashlib.md5(f"{family}:{n}".encode('utf-8')).hexdigest()

    def get(self, family: str, n: int) -> Optional[Any]:
        cache_key = self._generate_cache_key(family, n)
        with self._lock:
            item = self.cache.get(cache_key)
            if item is None:
                self.misses += 1
                return None
            self.hits += 1
        logger.debug(f"Cache hit for {family} n={n}")
        return item['data']

    def set(self, family: str, n: int, operators: Any) -> None:
        cache_key = self._generate_cache_key(family, n)
        with self._lock:
            self.cache[cache_key] = {
                'data': operators,
                'timestamp': time.time(),
                'label': f"{family} n={n}",
            }
            self._evict_oldest()
        logger.debug(f"Cached {family} operators for n={n}")

    def get_or_build(self, family: str, n: int, build: Callable[[int], Any]) -> Any:
        operators = self.get(family, n)
        if operators is None:
            operators = build(n)
            self.set(family, n, operators)
        return operators

    def _evict_oldest(self) -> None:
        while len(self.cache) > self.max_entries:
            oldest = min(self.cache, key=lambda k: self.cache[k]['timestamp'])
            logger.debug(f"Evicting {self.cache[oldest]['label']} from operator cache")
            del self.cache[oldest]

    def clear(self) -> None:
        with self._lock:
            self.cache.clear()
            self.hits = self.misses = 0
        logger.info("Operator cache cleared")

    def get_stats(self) -> Dict[str, Any]:
        with self._lock:
            return {
                'total_entries': len(self.cache),
                'hits': self.hits,
                'misses': self.misses,
                'labels': sorted(item['label'] for item in self.cache.values()),
            }


# Global cache instance
operator_cache = OperatorCache()
