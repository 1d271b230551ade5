"""
Twisted Kazhdan-Lusztig Polynomials

P^sigma_{y,w} for twisted involutions y <= w, filled column by column in index
order. With s the lowest left descent of w:

    s not in Des_L(y):  P^sigma_{y,w} = P^sigma_{s⋉y,w}

    s in Des_L(y), w' = s⋉w, c = [sw = ws*], d = [sy = ys*]:
        (q+1)^c P^sigma_{y,w} = (q+1)^d P^sigma_{s⋉y,w'} + q(q-d) P^sigma_{y,w'}
            - sum_{z in I, sz<z, y<=z<w} v^{l(w)-l(z)+c} m^sigma(z -s-> w') P^sigma_{y,z}

When c = 1 and l(w)-l(y) is odd the z = y summand contains mu^sigma(y,w)
itself. The right hand side is then evaluated with that term missing (call it
f), the top coefficient recovered as (-1)^n f(q=-1) with n = (l(w)-l(y)-1)/2,
and P^sigma = (f + mu q^{n+1}) / (q+1) by exact division.
"""

import logging
import time
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.coxeter import bits_descending
from core.kl import KLComputationError
from core.laurent import LaurentPoly, NonIntegralError, PolyPool, ZERO, ONE, Q, U, Q_PLUS_ONE

logger = logging.getLogger(__name__)

MuEdges = List[Tuple[int, int]]


class SigmaTable:
    """
    P^sigma_{y,w} over pairs of twisted involutions, one {y: poly} column per w.

    mu_edges[w] lists (x, mu^sigma(x,w)) for the nonzero values; the m^sigma
    inner sums run over it instead of the polynomial columns.
    """

    kind = 'psigma'

    def __init__(self, system, columns: Dict[int, Dict[int, LaurentPoly]],
                 mu_edges: Optional[Dict[int, MuEdges]] = None):
        self.system = system
        self.columns = columns
        self.mu_edges = mu_edges if mu_edges is not None else collect_sigma_edges(system, columns)

    def get(self, y: int, w: int) -> LaurentPoly:
        col = self.columns.get(w)
        if col is None:
            return ZERO
        return col.get(y, ZERO)

    def column(self, w: int) -> Dict[int, LaurentPoly]:
        return self.columns.get(w, {})

    def _gap(self, y: int, w: int) -> int:
        length = self.system.universe.length
        return length[w] - length[y]

    def mu_sigma(self, y: int, w: int) -> int:
        """Coefficient of v^{l(w)-l(y)-1} in P^sigma_{y,w}."""
        gap = self._gap(y, w)
        if gap <= 0 or not gap & 1:
            return 0
        return self.get(y, w).coefficient(gap - 1)

    def nu_sigma(self, y: int, w: int) -> int:
        """Coefficient of v^{l(w)-l(y)-2} in P^sigma_{y,w}."""
        gap = self._gap(y, w)
        if gap < 2 or gap & 1:
            return 0
        return self.get(y, w).coefficient(gap - 2)

    def mu_sigma_s(self, y: int, w: int, s: int) -> int:
        """
        nu^sigma(y,w) + [sy = ys*] mu^sigma(sy,w) - [sw = ws*] mu^sigma(y,sw)
            - sum_{x in I, sx < x} mu^sigma(y,x) mu^sigma(x,w)
        """
        system = self.system
        left = system.universe.left
        value = self.nu_sigma(y, w)
        if system.is_commuting_step(s, y):
            value += self.mu_sigma(left[s][y], w)
        if system.is_commuting_step(s, w):
            value -= self.mu_sigma(y, left[s][w])
        ldesc = system.universe.ldesc
        for x, m in self.mu_edges.get(w, ()):
            if ldesc[x] >> s & 1:
                value -= self.mu_sigma(y, x) * m
        return value

    def m_sigma(self, y: int, w: int, s: int) -> LaurentPoly:
        """m^sigma(y -s-> w): mu^sigma(y,w)(v+v^-1) for odd gaps, mu^sigma(y,w;s) for even."""
        gap = self._gap(y, w)
        if gap < 0:
            return ZERO
        if gap & 1:
            return U.scale(self.mu_sigma(y, w))
        return LaurentPoly.constant(self.mu_sigma_s(y, w, s))

    def items(self, restrict: Optional[Sequence[int]] = None) -> Iterator[Tuple[Tuple[int, int], LaurentPoly]]:
        allowed = None if restrict is None else set(restrict)
        pairs = sorted((y, w) for w, col in self.columns.items() for y in col
                       if allowed is None or (y in allowed and w in allowed))
        for y, w in pairs:
            yield (y, w), self.columns[w][y]

    def __len__(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def families(self) -> Dict[str, List[Tuple[Tuple[int, ...], LaurentPoly]]]:
        return {'Psigma': list(self.items())}

    @classmethod
    def from_families(cls, system, families) -> 'SigmaTable':
        columns: Dict[int, Dict[int, LaurentPoly]] = {w: {} for w in system.involutions}
        for (y, w), poly in families['Psigma']:
            columns.setdefault(w, {})[y] = poly
        return cls(system, columns)


def collect_sigma_edges(system, columns: Dict[int, Dict[int, LaurentPoly]]) -> Dict[int, MuEdges]:
    length = system.universe.length
    edges: Dict[int, MuEdges] = {}
    for w, col in columns.items():
        edges[w] = _column_edges(length, w, col)
    return edges


def _column_edges(length, w: int, col: Dict[int, LaurentPoly]) -> MuEdges:
    row = []
    for y in sorted(col):
        gap = length[w] - length[y]
        if gap > 0 and gap & 1:
            m = col[y].coefficient(gap - 1)
            if m:
                row.append((y, m))
    return row


def _check_shape(p: LaurentPoly, gap: int, y: int, w: int) -> None:
    if not p.is_q_polynomial() or (p and p.degree() > gap - 1):
        raise KLComputationError(f"P^sigma[{y},{w}] = {p} violates the degree bound (gap {gap})")


def compute_psigma(system, pool: Optional[PolyPool] = None) -> SigmaTable:
    """
    Compute all P^sigma_{y,w}.

    Args:
        system: enumerated CoxeterSystem with its twist
        pool: optional interning pool

    Raises:
        KLComputationError: on a degree-bound violation or an inexact (q+1)-division
    """
    started = time.monotonic()
    u = system.universe
    bruhat = system.bruhat
    length, ldesc = u.length, u.ldesc
    lt = system.ltimes_table()
    involutions = system.involutions
    is_inv = [False] * u.size
    for w in involutions:
        is_inv[w] = True
    intern = pool.intern if pool is not None else (lambda p: p)

    columns: Dict[int, Dict[int, LaurentPoly]] = {}
    table = SigmaTable(system, columns, {})

    for w in involutions:
        col: Dict[int, LaurentPoly] = {}
        columns[w] = col
        table.mu_edges[w] = []
        if w == 0:
            col[0] = ONE
            continue
        lw = length[w]
        mask = ldesc[w]
        s = (mask & -mask).bit_length() - 1
        w2 = lt[s][w]
        c = 1 if system.is_commuting_step(s, w) else 0
        ideal = [y for y in bits_descending(bruhat.ideal(w)) if is_inv[y]]
        candidates = [z for z in ideal if z != w and ldesc[z] >> s & 1]
        m_cache: Dict[int, LaurentPoly] = {}

        for y in ideal:
            if y == w:
                col[y] = ONE
                continue
            free = mask & ~ldesc[y]
            if free:
                t = (free & -free).bit_length() - 1
                col[y] = col[lt[t][y]]
                continue
            gap = lw - length[y]
            d = 1 if system.is_commuting_step(s, y) else 0
            f = table.get(lt[s][y], w2)
            if d:
                f = f * Q_PLUS_ONE
            f = f + table.get(y, w2) * (Q * (Q - LaurentPoly.constant(d)))
            for z in candidates:
                if length[z] < length[y] or not bruhat.leq(y, z):
                    continue
                if z == y:
                    # reads the unfinished cell (y, w) as zero
                    m = table.m_sigma(y, w2, s)
                else:
                    m = m_cache.get(z)
                    if m is None:
                        m = m_cache[z] = table.m_sigma(z, w2, s)
                if not m:
                    continue
                pz = ONE if z == y else table.get(y, z)
                if pz:
                    f = f - (m * pz).shift(lw - length[z] + c)
            if c:
                if gap & 1:
                    n = (gap - 1) // 2
                    top = (-1) ** n * f.evaluate_q(-1)
                    f = f + LaurentPoly.monomial(2 * n + 2, top)
                try:
                    f = f.divide_q_plus_one()
                except NonIntegralError as e:
                    raise KLComputationError(f"P^sigma[{y},{w}]: {e}") from e
            _check_shape(f, gap, y, w)
            col[y] = intern(f)
        table.mu_edges[w] = _column_edges(length, w, col)

    logger.info(f"{system.label}: {len(table):,} twisted KL polynomials over "
                f"{len(involutions):,} twisted involutions in {time.monotonic() - started:.2f}s")
    if pool is not None:
        pool.log_summary(f"{system.label} P^sigma table")
    return table


def mu_sigma(table: SigmaTable, y: int, w: int) -> int:
    return table.mu_sigma(y, w)


def nu_sigma(table: SigmaTable, y: int, w: int) -> int:
    return table.nu_sigma(y, w)


def mu_sigma_s(table: SigmaTable, y: int, w: int, s: int) -> int:
    return table.mu_sigma_s(y, w, s)


def m_sigma(table: SigmaTable, y: int, w: int, s: int) -> LaurentPoly:
    return table.m_sigma(y, w, s)
