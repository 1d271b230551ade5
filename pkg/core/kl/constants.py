"""
Structure Constants in the KL Basis

h_{x,y;z} with c_x c_y = sum_z h_{x,y;z} c_z. Slices are built per x in index
order from

    c_x = c_s c_{sx} - sum_{x' < sx, sx' < x'} mu(x', sx) c_{x'}     (s in Des_L(x))

so h_{x,y;.} = c_s . h_{sx,y;.} - sum mu(x', sx) h_{x',y;.}, where the left
action of c_s on the c-basis is

    c_s c_w = (v + v^-1) c_w                               if sw < w
    c_s c_w = c_{sw} + sum_{z < w, sz < z} mu(z, w) c_z    if sw > w
"""

import logging
import time
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from core.hecke.vector import Coeffs, add_scaled, add_term
from core.laurent import LaurentPoly, PolyPool, ZERO, ONE, U
from core.storage.slices import Slice, SliceStore, rss_mb

logger = logging.getLogger(__name__)

LeftAction = Callable[[int, Coeffs], Coeffs]

FAMILY_NAMES = {
    'h': 'h',
    'htilde': 'htilde',
    'hsigma': 'hsigma',
    'hplus': 'h+',
    'hminus': 'h-',
}


class ConstantsTable:
    """
    Three-index family (x, y, z) -> Laurent polynomial, held as x-slices
    {y: {z: poly}} in a SliceStore. Absent entries read as zero.
    """

    def __init__(self, kind: str, system, store: Optional[SliceStore] = None):
        if kind not in FAMILY_NAMES:
            raise ValueError(f"unknown constants kind '{kind}'")
        self.kind = kind
        self.system = system
        self.store = store if store is not None else SliceStore()

    def get(self, x: int, y: int, z: int) -> LaurentPoly:
        if x not in self.store:
            return ZERO
        return self.store.get(x).get(y, {}).get(z, ZERO)

    def row(self, x: int, y: int) -> Dict[int, LaurentPoly]:
        if x not in self.store:
            return {}
        return self.store.get(x).get(y, {})

    def slice(self, x: int) -> Slice:
        if x not in self.store:
            return {}
        return self.store.get(x)

    def put_slice(self, x: int, sl: Slice) -> None:
        self.store.put(x, {y: row for y, row in sl.items() if row})

    def xs(self) -> List[int]:
        return self.store.xs()

    def items(self) -> Iterator[Tuple[Tuple[int, int, int], LaurentPoly]]:
        """((x, y, z), poly) in key order."""
        for x in self.xs():
            sl = self.store.get(x)
            for y in sorted(sl):
                for z, p in sorted(sl[y].items()):
                    yield (x, y, z), p

    def __len__(self) -> int:
        return sum(len(row) for _, sl in self.store.items() for row in sl.values())

    def families(self) -> Dict[str, List[Tuple[Tuple[int, ...], LaurentPoly]]]:
        return {FAMILY_NAMES[self.kind]: list(self.items())}

    @classmethod
    def from_families(cls, kind: str, system, families,
                      store: Optional[SliceStore] = None) -> 'ConstantsTable':
        table = cls(kind, system, store)
        slices: Dict[int, Slice] = {}
        for (x, y, z), poly in families[FAMILY_NAMES[kind]]:
            slices.setdefault(x, {}).setdefault(y, {})[z] = poly
        for x in sorted(slices):
            table.put_slice(x, slices[x])
        return table


def left_c(system, kl, s: int, vec: Coeffs) -> Coeffs:
    """c_s * vec for a c-basis vector."""
    u = system.universe
    out: Coeffs = {}
    for w, p in vec.items():
        if u.ldesc[w] >> s & 1:
            add_term(out, w, U * p)
            continue
        add_term(out, u.left[s][w], p)
        for z, m in kl.mu_edges[w]:
            if u.ldesc[z] >> s & 1:
                add_term(out, z, p.scale(m))
    return out


def fill_slices(table: ConstantsTable, kl, keys: Sequence[int], act: LeftAction,
                intern: Callable[[LaurentPoly], LaurentPoly] = lambda p: p) -> ConstantsTable:
    """
    Fill x-slices of `table` for every x, rows indexed by `keys`.

    `act(s, vec)` is the left action of the generator's KL basis element; the
    slice of the identity is the identity matrix on `keys`.
    """
    system = table.system
    u = system.universe
    table.put_slice(0, {y: {y: ONE} for y in keys})
    current_length = 0
    for x in range(1, u.size):
        if u.length[x] != current_length:
            current_length = u.length[x]
            logger.debug(f"{system.label}: {table.kind} stratum length {current_length}, "
                         f"RSS {rss_mb():.0f} MB")
        s = u.first_left_descent(x)
        sx = u.left[s][x]
        base = table.slice(sx)
        corrections = [(m, table.slice(z)) for z, m in kl.mu_edges[sx]
                       if u.ldesc[z] >> s & 1]
        sl: Slice = {}
        for y in keys:
            row = act(s, base.get(y, {}))
            for m, zslice in corrections:
                add_scaled(row, zslice.get(y, {}), LaurentPoly.constant(-m))
            if row:
                sl[y] = {z: intern(p) for z, p in row.items()}
        table.put_slice(x, sl)
    return table


def compute_h(system, kl, store: Optional[SliceStore] = None,
              pool: Optional[PolyPool] = None) -> ConstantsTable:
    """
    Compute every h_{x,y;z}.

    Args:
        system: enumerated CoxeterSystem
        kl: KLTable of the same system (supplies the mu-edges)
        store: slice store; a fresh in-memory one by default
        pool: optional interning pool
    """
    started = time.monotonic()
    table = ConstantsTable('h', system, store)
    fill_slices(table, kl, range(system.universe.size),
                lambda s, vec: left_c(system, kl, s, vec),
                pool.intern if pool is not None else (lambda p: p))
    logger.info(f"{system.label}: {len(table):,} nonzero h constants in "
                f"{time.monotonic() - started:.2f}s")
    if pool is not None:
        pool.log_summary(f"{system.label} h table")
    return table


def compute_f(h: ConstantsTable, w: int, x: int, y: int) -> Dict[int, LaurentPoly]:
    """f_{w,x,y;z} = sum_g h_{w,x;g} h_{g,y;z}: the c-basis coefficients of c_w c_x c_y."""
    out: Coeffs = {}
    for g, p in h.row(w, x).items():
        add_scaled(out, h.row(g, y), p)
    return out
