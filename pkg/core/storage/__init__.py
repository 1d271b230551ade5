"""Table persistence: file codecs, disk cache and the h-slice store."""

from .codec import (
    TableFile, TableFileError, VersionMismatchError, ChecksumError,
    TruncatedFileError, TableFormatError, FORMAT_VERSION,
    dumps, loads, cache_store, cache_load, checksum,
)
from .cache import CacheManager, CACHE_DIR_ENV, default_cache_dir, element_dictionary
from .slices import SliceStore, rss_mb

__all__ = [
    'TableFile', 'TableFileError', 'VersionMismatchError', 'ChecksumError',
    'TruncatedFileError', 'TableFormatError', 'FORMAT_VERSION',
    'dumps', 'loads', 'cache_store', 'cache_load', 'checksum',
    'CacheManager', 'CACHE_DIR_ENV', 'default_cache_dir', 'element_dictionary',
    'SliceStore', 'rss_mb',
]
