"""
Slice Store

Holds x-slices {y: {z: poly}} of a three-index constants family. Slices live
in memory until the process RSS passes the configured limit; after that every
slice is written to a scratch directory and read back through an LRU cache.
"""

import logging
import shutil
import tempfile
import threading
from collections import OrderedDict
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import psutil

from core.laurent import LaurentPoly
from .codec import Reader, decode_entries, encode_entries

logger = logging.getLogger(__name__)

Slice = Dict[int, Dict[int, LaurentPoly]]

# RSS is sampled every this many inserts
RSS_SAMPLE_EVERY = 32


def rss_mb() -> float:
    return psutil.Process().memory_info().rss / (1024 * 1024)


def encode_slice(sl: Slice) -> bytes:
    entries = [((y, z), p) for y in sorted(sl) for z, p in sorted(sl[y].items())]
    return encode_entries(entries)


def decode_slice(data: bytes) -> Slice:
    out: Slice = {}
    for (y, z), p in decode_entries(Reader(data)):
        out.setdefault(y, {})[z] = p
    return out


class SliceStore:
    """
    Mapping x -> slice with optional spill to disk.

    Args:
        memory_limit_mb: spill once RSS exceeds this (0 disables spilling)
        cache_size: LRU capacity for slices read back from disk
        spill_dir: scratch directory (a temporary one is created on demand)
    """

    def __init__(self, memory_limit_mb: int = 0, cache_size: int = 64,
                 spill_dir: Optional[str] = None):
        self.memory_limit_mb = memory_limit_mb
        self.cache_size = max(cache_size, 2)
        self._spill_root = Path(spill_dir) if spill_dir else None
        self._owns_dir = spill_dir is None
        self._dir: Optional[Path] = None
        self._resident: Dict[int, Slice] = {}
        self._on_disk: set = set()
        self._lru: "OrderedDict[int, Slice]" = OrderedDict()
        self._lock = threading.RLock()
        self._puts = 0
        self.spilling = False

    def __contains__(self, x: int) -> bool:
        return x in self._resident or x in self._on_disk

    def __len__(self) -> int:
        return len(self._resident) + len(self._on_disk)

    def xs(self) -> List[int]:
        return sorted(set(self._resident) | self._on_disk)

    def put(self, x: int, sl: Slice) -> None:
        with self._lock:
            if self.spilling:
                self._write(x, sl)
                self._remember(x, sl)
                return
            self._resident[x] = sl
            self._puts += 1
            if self.memory_limit_mb and self._puts % RSS_SAMPLE_EVERY == 0:
                current = rss_mb()
                if current > self.memory_limit_mb:
                    logger.warning(f"RSS {current:.0f} MB over limit {self.memory_limit_mb} MB; "
                                   f"spilling {len(self._resident)} slices to disk")
                    self.spill()

    def get(self, x: int) -> Slice:
        with self._lock:
            sl = self._resident.get(x)
            if sl is not None:
                return sl
            sl = self._lru.get(x)
            if sl is not None:
                self._lru.move_to_end(x)
                return sl
            if x not in self._on_disk:
                raise KeyError(x)
            assert self._dir is not None
            with open(self._dir / f"slice-{x}.bin", 'rb') as f:
                sl = decode_slice(f.read())
            self._remember(x, sl)
            return sl

    def _remember(self, x: int, sl: Slice) -> None:
        self._lru[x] = sl
        self._lru.move_to_end(x)
        while len(self._lru) > self.cache_size:
            self._lru.popitem(last=False)

    def _write(self, x: int, sl: Slice) -> None:
        if self._dir is None:
            if self._spill_root is not None:
                self._spill_root.mkdir(parents=True, exist_ok=True)
                self._dir = self._spill_root
            else:
                self._dir = Path(tempfile.mkdtemp(prefix="klv-slices-"))
            logger.info(f"Spilling slices to {self._dir}")
        with open(self._dir / f"slice-{x}.bin", 'wb') as f:
            f.write(encode_slice(sl))
        self._on_disk.add(x)

    def spill(self) -> None:
        """Move every resident slice to disk and keep spilling new ones."""
        with self._lock:
            for x in sorted(self._resident):
                self._write(x, self._resident[x])
            self._resident.clear()
            self.spilling = True

    def items(self) -> Iterable:
        for x in self.xs():
            yield x, self.get(x)

    def close(self) -> None:
        if self._dir is not None and self._owns_dir:
            shutil.rmtree(self._dir, ignore_errors=True)
        self._dir = None
