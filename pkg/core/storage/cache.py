"""
Table Cache

Keeps computed tables on disk, one file per (system, kind), and serves them
back when the stored header still matches the system.
"""

import logging
import os
import re
from pathlib import Path
from typing import Optional

from .codec import TableFile, TableFileError, cache_load, cache_store

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "KLV_CACHE_DIR"


def default_cache_dir(configured: Optional[str] = None) -> Path:
    """$KLV_CACHE_DIR wins over the configured directory."""
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env).expanduser()
    return Path(configured or "~/.klv/cache").expanduser()


class CacheManager:
    """
    File cache for table files.

    A cached file is valid when it decodes cleanly and its header names the
    same matrix, twist and element dictionary as the requesting system.
    """

    def __init__(self, cache_dir: Optional[str] = None, fmt: str = 'json'):
        self.cache_dir = default_cache_dir(cache_dir)
        self.fmt = fmt
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, system, kind: str) -> Path:
        safe = re.sub(r'[^A-Za-z0-9_.-]+', '_', system.label)
        suffix = 'json' if self.fmt == 'json' else 'bin'
        return self.cache_dir / f"{safe}-{kind}.{suffix}"

    def load(self, system, kind: str) -> Optional[TableFile]:
        path = self.path_for(system, kind)
        if not path.exists():
            return None
        try:
            tf = cache_load(path)
        except (TableFileError, OSError) as e:
            logger.warning(f"Ignoring unreadable cache file {path}: {e}")
            return None
        if not self._matches(tf, system, kind):
            logger.warning(f"Ignoring stale cache file {path}")
            return None
        logger.debug(f"Using cached {kind} table for {system.label}")
        return tf

    def store(self, system, tf: TableFile) -> Path:
        path = self.path_for(system, tf.kind)
        cache_store(path, tf, self.fmt)
        logger.info(f"Cached {tf.kind} table for {system.label} at {path}")
        return path

    @staticmethod
    def _matches(tf: TableFile, system, kind: str) -> bool:
        described = system.describe()
        return (tf.kind == kind
                and tf.system.get('matrix') == described['matrix']
                and tf.system.get('twist') == described['twist']
                and tf.elements == element_dictionary(system))


def element_dictionary(system):
    """Reduced words in index order, 1-based generator labels."""
    return [[s + 1 for s in word] for word in system.universe.words]
