"""
Classical Kazhdan-Lusztig Polynomials

Fills P_{y,w} column by column in index (length) order. Within a column, y
runs over the Bruhat ideal of w from the top down so that the copy rules

    P_{y,w} = P_{ty,w}  for t in Des_L(w) \\ Des_L(y)
    P_{y,w} = P_{yt,w}  for t in Des_R(w) \\ Des_R(y)

can read already finished cells. The remaining cells use the recursion on
s = lowest left descent of w:

    P_{y,w} = P_{sy,sw} + q P_{y,sw} - sum mu(z,sw) q^{(l(w)-l(z))/2} P_{y,z}

over y <= z < sw with sz < z.
"""

import logging
import time
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.coxeter import bits_descending
from core.laurent import LaurentPoly, PolyPool, ZERO, ONE

logger = logging.getLogger(__name__)

MuEdges = List[Tuple[int, int]]


class KLComputationError(RuntimeError):
    """A recursion produced a value outside the proven shape (a bug)."""


class KLTable:
    """
    Triangular family P_{y,w}, stored per column w as {y: P_{y,w}} over y <= w.

    mu_edges[w] lists (z, mu(z,w)) for z < w with mu(z,w) != 0.
    """

    kind = 'kl'

    def __init__(self, system, columns: List[Dict[int, LaurentPoly]], mu_edges: List[MuEdges]):
        self.system = system
        self.columns = columns
        self.mu_edges = mu_edges

    def get(self, y: int, w: int) -> LaurentPoly:
        return self.columns[w].get(y, ZERO)

    def column(self, w: int) -> Dict[int, LaurentPoly]:
        return self.columns[w]

    def mu(self, y: int, w: int) -> int:
        length = self.system.universe.length
        gap = length[w] - length[y]
        if gap <= 0 or not gap & 1:
            return 0
        return self.get(y, w).coefficient(gap - 1)

    def items(self, restrict: Optional[Sequence[int]] = None) -> Iterator[Tuple[Tuple[int, int], LaurentPoly]]:
        """((y, w), P_{y,w}) over stored cells, sorted by (y, w); optionally y, w in `restrict`."""
        allowed = None if restrict is None else set(restrict)
        pairs = []
        ws = range(len(self.columns)) if restrict is None else sorted(allowed)
        for w in ws:
            for y in self.columns[w]:
                if allowed is None or y in allowed:
                    pairs.append((y, w))
        pairs.sort()
        for y, w in pairs:
            yield (y, w), self.columns[w][y]

    def __len__(self) -> int:
        return sum(len(c) for c in self.columns)

    def families(self) -> Dict[str, List[Tuple[Tuple[int, ...], LaurentPoly]]]:
        return {'P': list(self.items())}

    @classmethod
    def from_families(cls, system, families) -> 'KLTable':
        columns: List[Dict[int, LaurentPoly]] = [{} for _ in range(system.universe.size)]
        for (y, w), poly in families['P']:
            columns[w][y] = poly
        return cls(system, columns, collect_mu_edges(system, columns))


def collect_mu_edges(system, columns: List[Dict[int, LaurentPoly]]) -> List[MuEdges]:
    length = system.universe.length
    edges: List[MuEdges] = []
    for w, col in enumerate(columns):
        lw = length[w]
        row = []
        for y in sorted(col):
            gap = lw - length[y]
            if gap & 1:
                m = col[y].coefficient(gap - 1)
                if m:
                    row.append((y, m))
        edges.append(row)
    return edges


def _check_shape(p: LaurentPoly, gap: int, y: int, w: int) -> None:
    if not p.is_q_polynomial() or (p and p.degree() > gap - 1):
        raise KLComputationError(f"P[{y},{w}] = {p} violates the degree bound (gap {gap})")


def compute_kl(system, pool: Optional[PolyPool] = None,
               extremal_shortcut: bool = False) -> KLTable:
    """
    Compute all P_{y,w}.

    Args:
        system: enumerated CoxeterSystem
        pool: optional interning pool for stored polynomials
        extremal_shortcut: set P_{y,w0} = 1 for the longest element directly

    Raises:
        KLComputationError: if a computed polynomial violates the degree bound
    """
    started = time.monotonic()
    u = system.universe
    bruhat = system.bruhat
    n = u.size
    length, left, right = u.length, u.left, u.right
    ldesc, rdesc = u.ldesc, u.rdesc
    intern = pool.intern if pool is not None else (lambda p: p)

    columns: List[Dict[int, LaurentPoly]] = [{} for _ in range(n)]
    mu_edges: List[MuEdges] = [[] for _ in range(n)]
    columns[0] = {0: ONE}
    current_length = 0

    for w in range(1, n):
        lw = length[w]
        if lw != current_length:
            logger.debug(f"{system.label}: KL stratum length {lw}")
            current_length = lw
        ideal = bits_descending(bruhat.ideal(w))
        col: Dict[int, LaurentPoly] = {}
        if extremal_shortcut and w == n - 1:
            for y in ideal:
                col[y] = ONE
        else:
            mask = ldesc[w]
            s = (mask & -mask).bit_length() - 1
            sw = left[s][w]
            prev = columns[sw]
            edges = [(z, m) for z, m in mu_edges[sw] if ldesc[z] >> s & 1]
            rmask = rdesc[w]
            srow = left[s]
            for y in ideal:
                if y == w:
                    col[y] = ONE
                    continue
                free = mask & ~ldesc[y]
                if free:
                    t = (free & -free).bit_length() - 1
                    col[y] = col[left[t][y]]
                    continue
                free = rmask & ~rdesc[y]
                if free:
                    t = (free & -free).bit_length() - 1
                    col[y] = col[right[t][y]]
                    continue
                p = prev.get(srow[y], ZERO) + prev.get(y, ZERO).shift(2)
                for z, m in edges:
                    if z == y:
                        pz = ONE
                    else:
                        if length[z] <= length[y] or not bruhat.leq(y, z):
                            continue
                        pz = columns[z].get(y, ZERO)
                    p = p - pz.shift(lw - length[z]).scale(m)
                _check_shape(p, lw - length[y], y, w)
                col[y] = intern(p)
        columns[w] = col
        row = []
        for y in sorted(col):
            gap = lw - length[y]
            if gap & 1:
                m = col[y].coefficient(gap - 1)
                if m:
                    row.append((y, m))
        mu_edges[w] = row

    table = KLTable(system, columns, mu_edges)
    logger.info(f"{system.label}: {len(table):,} KL polynomials in "
                f"{time.monotonic() - started:.2f}s")
    if pool is not None:
        pool.log_summary(f"{system.label} KL table")
    return table


def mu(table: KLTable, y: int, w: int) -> int:
    """Coefficient of v^{l(w)-l(y)-1} in P_{y,w}."""
    return table.mu(y, w)
