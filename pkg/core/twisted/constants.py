"""
Twisted Structure Constants

h^sigma_{x,y;z}: C_x A_y = sum_z h^sigma_{x,y;z} A_z, built like h from the
generator action

    C_s A_w = (q + q^-1) A_w                                          s in Des_L(w)
    C_s A_w = (v + v^-1) A_{sw} + sum_{sy<y<sw} m^sigma(y -s-> w) A_y     sw = ws*
    C_s A_w = A_{sws*} + sum_{sy<y<sws*} m^sigma(y -s-> w) A_y          otherwise

h-tilde_{x,y;z} = sum_{z'} h_{x,y;z'} h_{z',(x*)^-1;z} for y, z twisted
involutions. The second factor is read from the x* slice through
h_{z',(x*)^-1;z} = h_{x*,z'^-1;z^-1}, so each output slice needs two input
slices only. The contraction runs in numpy with one matrix product per pair of
exponents.
"""

import logging
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from core.coxeter import bits_descending
from core.hecke.vector import Coeffs, add_term
from core.kl.constants import ConstantsTable, fill_slices
from core.laurent import LaurentPoly, PolyPool, U
from core.storage.slices import Slice, SliceStore, rss_mb

logger = logging.getLogger(__name__)

Q_PLUS_Q_INV = LaurentPoly((1, 0, 0, 0, 1), -2)

# float64 represents every integer below this exactly
FLOAT_EXACT = 2 ** 53
INT64_LIMIT = 2 ** 63 - 1

Terms = List[Tuple[int, LaurentPoly]]


class ModuleCAction:
    """Cached C_s A_w expansions for one system."""

    def __init__(self, system, sigma):
        self.system = system
        self.sigma = sigma
        self._cache: Dict[Tuple[int, int], Terms] = {}

    def terms(self, s: int, w: int) -> Terms:
        key = (s, w)
        found = self._cache.get(key)
        if found is not None:
            return found
        system = self.system
        u = system.universe
        if u.ldesc[w] >> s & 1:
            terms = [(w, Q_PLUS_Q_INV)]
        else:
            top = system.ltimes(s, w)
            terms = [(top, U if system.is_commuting_step(s, w) else LaurentPoly.constant(1))]
            for y in bits_descending(system.bruhat.ideal(top)):
                if y == top or not u.ldesc[y] >> s & 1 or not system.is_twisted_involution(y):
                    continue
                m = self.sigma.m_sigma(y, w, s)
                if m:
                    terms.append((y, m))
        self._cache[key] = terms
        return terms

    def act(self, s: int, vec: Coeffs) -> Coeffs:
        """C_s * vec for an A-basis vector."""
        out: Coeffs = {}
        for w, p in vec.items():
            for z, f in self.terms(s, w):
                add_term(out, z, f * p)
        return out


def compute_hsigma(system, sigma, kl, store: Optional[SliceStore] = None,
                   pool: Optional[PolyPool] = None) -> ConstantsTable:
    """
    Compute every h^sigma_{x,y;z} (x in W, y and z twisted involutions).

    The mu(x', sx) corrections come from the classical table `kl`.
    """
    started = time.monotonic()
    action = ModuleCAction(system, sigma)
    table = ConstantsTable('hsigma', system, store)
    fill_slices(table, kl, system.involutions, action.act,
                pool.intern if pool is not None else (lambda p: p))
    logger.info(f"{system.label}: {len(table):,} nonzero h^sigma constants in "
                f"{time.monotonic() - started:.2f}s")
    if pool is not None:
        pool.log_summary(f"{system.label} h^sigma table")
    return table


def _dense(rows: Dict[int, Dict[int, LaurentPoly]], row_pos: Dict[int, int],
           col_pos: Dict[int, int], row_key, col_key):
    """
    Pack a polynomial matrix as (exponent, row, col) integers.

    row_key/col_key map the stored indices to matrix indices (or None to drop).
    Returns (array, lowest exponent, largest absolute coefficient).
    """
    entries = []
    lo, hi, biggest = None, None, 0
    for a, row in rows.items():
        i = row_key(a)
        if i is None:
            continue
        for b, p in row.items():
            j = col_key(b)
            if j is None or not p:
                continue
            entries.append((i, j, p))
            lo = p.offset if lo is None else min(lo, p.offset)
            hi = p.degree() if hi is None else max(hi, p.degree())
            biggest = max(biggest, max(abs(c) for c in p.coeffs))
    if not entries:
        return None, 0, 0
    arr = np.zeros((hi - lo + 1, len(row_pos), len(col_pos)), dtype=object)
    for i, j, p in entries:
        arr[p.offset - lo:p.offset - lo + len(p.coeffs), i, j] = p.coeffs
    return arr, lo, biggest


def _contract(a, b, exact_dtype):
    """out[e] = sum_{i+j=e} a[i] @ b[j]."""
    ka, kb = a.shape[0], b.shape[0]
    a = a.astype(exact_dtype)
    b = b.astype(exact_dtype)
    out = np.zeros((ka + kb - 1, a.shape[1], b.shape[2]), dtype=exact_dtype)
    for i in range(ka):
        if not a[i].any():
            continue
        for j in range(kb):
            out[i + j] += a[i] @ b[j]
    return out


def htilde_slice(system, h: ConstantsTable, x: int, fast: bool = True) -> Slice:
    """One x-slice {y: {z: h-tilde_{x,y;z}}}."""
    u = system.universe
    involutions = system.involutions
    inv_pos = {w: i for i, w in enumerate(involutions)}
    all_pos = {w: w for w in range(u.size)}
    inverse = u.inverse

    a, lo_a, max_a = _dense(h.slice(x), inv_pos, all_pos, inv_pos.get, lambda z: z)
    if a is None:
        return {}
    # B[z', z] = h_{x*, z'^-1; z^-1}
    b, lo_b, max_b = _dense(h.slice(u.star[x]), all_pos, inv_pos,
                            lambda zp: inverse[zp],
                            lambda zi: inv_pos.get(inverse[zi]))
    if b is None:
        return {}

    bound = max_a * max_b * u.size * min(a.shape[0], b.shape[0])
    if fast and bound < FLOAT_EXACT:
        out = np.rint(_contract(a, b, np.float64)).astype(np.int64)
    elif bound <= INT64_LIMIT:
        out = _contract(a, b, np.int64)
    else:
        out = _contract(a, b, object)

    offset = lo_a + lo_b
    sl: Slice = {}
    nz_i, nz_j = np.nonzero(out.any(axis=0))
    for i, j in zip(nz_i.tolist(), nz_j.tolist()):
        poly = LaurentPoly([int(c) for c in out[:, i, j].tolist()], offset)
        if poly:
            sl.setdefault(involutions[i], {})[involutions[j]] = poly
    return sl


def iter_htilde_slices(system, h: ConstantsTable, threads: int = 1,
                       fast: bool = True) -> Iterator[Tuple[int, Slice]]:
    """
    Yield (x, slice) for every x in index order.

    With threads > 1 the contractions run in a thread pool. At most
    window_size(threads) slices are pending at once, so a slow consumer
    never holds more than that many finished slices in memory.
    """
    xs = range(system.universe.size)
    if threads <= 1:
        for x in xs:
            yield x, htilde_slice(system, h, x, fast)
        return
    window = window_size(threads)
    pending: deque = deque()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for x in xs:
            pending.append((x, pool.submit(htilde_slice, system, h, x, fast)))
            if len(pending) >= window:
                done_x, future = pending.popleft()
                yield done_x, future.result()
        while pending:
            done_x, future = pending.popleft()
            yield done_x, future.result()


def window_size(threads: int) -> int:
    return 2 * max(threads, 1)


def compute_htilde(system, h: ConstantsTable, store: Optional[SliceStore] = None,
                   threads: int = 1, fast: bool = True,
                   pool: Optional[PolyPool] = None) -> ConstantsTable:
    """Materialise every h-tilde slice into a ConstantsTable."""
    started = time.monotonic()
    intern = pool.intern if pool is not None else (lambda p: p)
    table = ConstantsTable('htilde', system, store)
    for x, sl in iter_htilde_slices(system, h, threads, fast):
        table.put_slice(x, {y: {z: intern(p) for z, p in row.items()} for y, row in sl.items()})
    logger.info(f"{system.label}: {len(table):,} nonzero h-tilde constants in "
                f"{time.monotonic() - started:.2f}s (RSS {rss_mb():.0f} MB)")
    return table
