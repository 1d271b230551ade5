"""
Bruhat order via lower-ideal bitsets.

For s in Des_L(w): {y <= w} = {y <= sw} union s{y <= sw}. Ideals are built
lazily, one Python int per w, and published once complete.
"""

import threading
from typing import Iterator, List, Optional


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, increasing."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_descending(mask: int) -> List[int]:
    out = list(iter_bits(mask))
    out.reverse()
    return out


class BruhatOrder:
    """Bruhat comparisons for an enumerated universe."""

    def __init__(self, universe):
        self.universe = universe
        self._ideals: List[Optional[int]] = [None] * universe.size
        self._ideals[0] = 1
        self._lock = threading.Lock()

    def ideal(self, w: int) -> int:
        """Bitset of all y <= w."""
        found = self._ideals[w]
        if found is not None:
            return found
        u = self.universe
        # walk down to the first memoized element, then build back up
        chain = []
        cur = w
        while self._ideals[cur] is None:
            chain.append(cur)
            s = u.first_left_descent(cur)
            cur = u.left[s][cur]
        for x in reversed(chain):
            s = u.first_left_descent(x)
            below = self._ideals[u.left[s][x]]
            row = u.left[s]
            moved = 0
            for y in iter_bits(below):
                moved |= 1 << row[y]
            with self._lock:
                if self._ideals[x] is None:
                    self._ideals[x] = below | moved
        return self._ideals[w]

    def leq(self, y: int, w: int) -> bool:
        if y == w or y == 0:
            return True
        if self.universe.length[y] >= self.universe.length[w]:
            return False
        return bool(self.ideal(w) >> y & 1)

    def lower_set(self, w: int) -> List[int]:
        """All y <= w in increasing index order."""
        return list(iter_bits(self.ideal(w)))
