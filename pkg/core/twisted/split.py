"""
Split Families

P^+- = (P +- P^sigma) / 2 on pairs of twisted involutions, and
h^+- = (h-tilde +- h^sigma) / 2. Both halvings are exact; NonIntegralError
escapes if one is not.
"""

import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from core.kl.constants import ConstantsTable
from core.laurent import LaurentPoly, ZERO
from core.storage.slices import Slice, SliceStore

logger = logging.getLogger(__name__)

SIGNS = ('+', '-')


def halves(full: LaurentPoly, sigma: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    return (full + sigma).halve(), (full - sigma).halve()


class SplitTable:
    """
    The plus and minus halves of a family.

    kind 'split-polys' keeps {(y, w): poly} maps; kind 'split-constants' keeps
    a pair of ConstantsTables.
    """

    def __init__(self, kind: str, system, plus, minus):
        if kind not in ('split-polys', 'split-constants'):
            raise ValueError(f"unknown split kind '{kind}'")
        self.kind = kind
        self.system = system
        self.plus = plus
        self.minus = minus

    def half(self, sign: str):
        if sign not in SIGNS:
            raise ValueError(f"sign must be '+' or '-', got '{sign}'")
        return self.plus if sign == '+' else self.minus

    def get(self, sign: str, *key: int) -> LaurentPoly:
        half = self.half(sign)
        if self.kind == 'split-polys':
            return half.get(tuple(key), ZERO)
        return half.get(*key)

    def items(self, sign: str) -> Iterator[Tuple[Tuple[int, ...], LaurentPoly]]:
        half = self.half(sign)
        if self.kind == 'split-polys':
            for key in sorted(half):
                yield key, half[key]
        else:
            yield from half.items()

    def families(self) -> Dict[str, List[Tuple[Tuple[int, ...], LaurentPoly]]]:
        stem = 'P' if self.kind == 'split-polys' else 'h'
        return {f"{stem}+": list(self.items('+')), f"{stem}-": list(self.items('-'))}

    @classmethod
    def from_families(cls, kind: str, system, families) -> 'SplitTable':
        if kind == 'split-polys':
            return cls(kind, system, dict(families['P+']), dict(families['P-']))
        return cls(kind, system,
                   ConstantsTable.from_families('hplus', system, {'h+': families['h+']}),
                   ConstantsTable.from_families('hminus', system, {'h-': families['h-']}))


def split_polys(kl, sigma) -> SplitTable:
    """P^+- over every pair y <= w of twisted involutions."""
    system = sigma.system
    plus: Dict[Tuple[int, int], LaurentPoly] = {}
    minus: Dict[Tuple[int, int], LaurentPoly] = {}
    for w in system.involutions:
        for y, ps in sigma.column(w).items():
            p, m = halves(kl.get(y, w), ps)
            if p:
                plus[(y, w)] = p
            if m:
                minus[(y, w)] = m
    logger.info(f"{system.label}: split {len(plus):,} P+ and {len(minus):,} P- entries")
    return SplitTable('split-polys', system, plus, minus)


def split_slice(tilde: Slice, sigma: Slice) -> Tuple[Slice, Slice]:
    """(h^+, h^-) for one x-slice."""
    plus: Slice = {}
    minus: Slice = {}
    for y in set(tilde) | set(sigma):
        trow = tilde.get(y, {})
        srow = sigma.get(y, {})
        for z in set(trow) | set(srow):
            p, m = halves(trow.get(z, ZERO), srow.get(z, ZERO))
            if p:
                plus.setdefault(y, {})[z] = p
            if m:
                minus.setdefault(y, {})[z] = m
    return plus, minus


def iter_split_slices(tilde_slices: Iterable[Tuple[int, Slice]],
                      hsigma: ConstantsTable) -> Iterator[Tuple[int, Slice, Slice]]:
    """Stream (x, h^+ slice, h^- slice) alongside an h-tilde slice stream."""
    for x, sl in tilde_slices:
        plus, minus = split_slice(sl, hsigma.slice(x))
        yield x, plus, minus


def split_constants(htilde: ConstantsTable, hsigma: ConstantsTable,
                    plus_store: Optional[SliceStore] = None,
                    minus_store: Optional[SliceStore] = None) -> SplitTable:
    """h^+- for every (x, y, z)."""
    system = htilde.system
    plus = ConstantsTable('hplus', system, plus_store)
    minus = ConstantsTable('hminus', system, minus_store)
    xs = sorted(set(htilde.xs()) | set(hsigma.xs()))
    for x, p, m in iter_split_slices(((x, htilde.slice(x)) for x in xs), hsigma):
        plus.put_slice(x, p)
        minus.put_slice(x, m)
    logger.info(f"{system.label}: split {len(plus):,} h+ and {len(minus):,} h- entries")
    return SplitTable('split-constants', system, plus, minus)
