"""
Polynomial interning pool.

KL-type tables repeat a small number of distinct polynomials; storing one
canonical object per value keeps large tables compact.
"""

import threading
import logging
from typing import Dict

from .poly import LaurentPoly

logger = logging.getLogger(__name__)


class PolyPool:
    """Hash-consing pool. The first inserted object for a value stays canonical."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self._pool: Dict[LaurentPoly, LaurentPoly] = {}
        self._lock = threading.Lock()
        self.requests = 0

    def intern(self, poly: LaurentPoly) -> LaurentPoly:
        if not self.enabled:
            return poly
        with self._lock:
            self.requests += 1
            return self._pool.setdefault(poly, poly)

    def __len__(self) -> int:
        return len(self._pool)

    def log_summary(self, label: str) -> None:
        if self.enabled:
            logger.debug(f"{label}: {len(self._pool)} distinct polynomials "
                         f"for {self.requests} stored entries")
