"""
Computation Manager

Computes the tables of one system on demand, each at most once, and routes
them through the table cache when caching is enabled.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

from core.config import KLVConfig
from core.kl import ConstantsTable, KLTable, compute_h, compute_kl
from core.laurent import PolyPool
from core.storage import CacheManager, SliceStore, TableFile, element_dictionary
from core.storage.slices import Slice
from core.twisted import (
    SigmaTable, SplitTable, compute_hsigma, compute_htilde, compute_psigma,
    iter_htilde_slices, split_constants, split_polys, split_slice,
)

logger = logging.getLogger(__name__)

TABLE_KINDS = ('kl', 'psigma', 'split-polys', 'h', 'htilde', 'hsigma', 'split-constants')


def table_file_for(table, system) -> TableFile:
    """Wrap a computed table for serialization."""
    return TableFile(kind=table.kind,
                     system=system.describe(),
                     elements=element_dictionary(system),
                     families=table.families())


class ComputationManager:
    """Lazy per-system table pipeline."""

    def __init__(self, system, config: Optional[KLVConfig] = None,
                 cache: Optional[CacheManager] = None):
        self.system = system
        self.config = config or KLVConfig()
        self.cache = cache
        self.pool = PolyPool(self.config.compute.intern_polys)
        self._tables: Dict[str, object] = {}
        self._stores: List[SliceStore] = []
        system.enumerate(self.config.limits.element_cap)

    def new_store(self) -> SliceStore:
        store = SliceStore(self.config.compute.memory_limit_mb,
                           self.config.compute.slice_cache_size)
        self._stores.append(store)
        return store

    def close(self) -> None:
        for store in self._stores:
            store.close()
        self._stores.clear()

    def __enter__(self) -> 'ComputationManager':
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- cache plumbing ---------------------------------------------------

    def _cached(self, kind: str):
        if self.cache is None:
            return None
        tf = self.cache.load(self.system, kind)
        if tf is None:
            return None
        if kind == 'kl':
            return KLTable.from_families(self.system, tf.families)
        if kind == 'psigma':
            return SigmaTable.from_families(self.system, tf.families)
        if kind in ('split-polys', 'split-constants'):
            return SplitTable.from_families(kind, self.system, tf.families)
        return ConstantsTable.from_families(kind, self.system, tf.families, self.new_store())

    def _remember(self, kind: str, table):
        self._tables[kind] = table
        if self.cache is not None:
            self.cache.store(self.system, table_file_for(table, self.system))
        return table

    def _get(self, kind: str, build):
        table = self._tables.get(kind)
        if table is not None:
            return table
        table = self._cached(kind)
        if table is not None:
            self._tables[kind] = table
            return table
        return self._remember(kind, build())

    # -- tables -----------------------------------------------------------

    def kl(self) -> KLTable:
        return self._get('kl', lambda: compute_kl(
            self.system, self.pool, self.config.compute.extremal_shortcut))

    def sigma(self) -> SigmaTable:
        return self._get('psigma', lambda: compute_psigma(self.system, pool=self.pool))

    def h(self) -> ConstantsTable:
        return self._get('h', lambda: compute_h(self.system, self.kl(), self.new_store(), self.pool))

    def hsigma(self) -> ConstantsTable:
        return self._get('hsigma', lambda: compute_hsigma(
            self.system, self.sigma(), self.kl(), self.new_store(), self.pool))

    def htilde(self) -> ConstantsTable:
        compute = self.config.compute
        return self._get('htilde', lambda: compute_htilde(
            self.system, self.h(), self.new_store(), compute.threads,
            compute.fast_contraction, self.pool))

    def split_polys(self) -> SplitTable:
        return self._get('split-polys', lambda: split_polys(self.kl(), self.sigma()))

    def split_constants(self) -> SplitTable:
        return self._get('split-constants', lambda: split_constants(
            self.htilde(), self.hsigma(), self.new_store(), self.new_store()))

    def table(self, kind: str):
        builders = {
            'kl': self.kl,
            'psigma': self.sigma,
            'split-polys': self.split_polys,
            'h': self.h,
            'htilde': self.htilde,
            'hsigma': self.hsigma,
            'split-constants': self.split_constants,
        }
        if kind not in builders:
            raise ValueError(f"unknown table kind '{kind}' (one of {', '.join(TABLE_KINDS)})")
        return builders[kind]()

    def table_file(self, kind: str) -> TableFile:
        return table_file_for(self.table(kind), self.system)

    def constant_slices(self) -> Iterator[Tuple[int, Slice, Slice, Slice, Slice]]:
        """
        Stream (x, h-tilde, h^sigma, h^+, h^-) slices in x order.

        Uses materialised h-tilde when it is already held; otherwise contracts
        slice by slice without keeping h-tilde.
        """
        hsigma = self.hsigma()
        held = self._tables.get('htilde')
        if isinstance(held, ConstantsTable):
            stream = ((x, held.slice(x)) for x in range(self.system.universe.size))
        else:
            compute = self.config.compute
            stream = iter_htilde_slices(self.system, self.h(), compute.threads,
                                        compute.fast_contraction)
        for x, tilde in stream:
            sig = hsigma.slice(x)
            plus, minus = split_slice(tilde, sig)
            yield x, tilde, sig, plus, minus
