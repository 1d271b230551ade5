"""
Property Checks

Positivity and unimodality properties as executable checks over computed
tables. Each check is an accumulator fed (key, polynomial) pairs in key order,
so tables and slice streams go through the same code; the first failing entry
becomes the witness.

    A / A'   nonnegative coefficients of P, resp. P^+ and P^-
    B / B'   P_{y,w} - P_{z,w} nonnegative whenever y <= z
    C / C'   nonnegative coefficients of h, resp. h^+ and h^-
    D / D'   balanced unimodal h, resp. h^+ and h^-
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from core.coxeter import iter_bits
from core.laurent import LaurentPoly, NonIntegralError, ZERO
from core.twisted.split import halves

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]

PROPERTY_IDS = ('A', 'B', 'C', 'D', 'Ap', 'Bp', 'Cp', 'Dp')

DESCRIPTIONS = {
    'A': "P_{y,w} has nonnegative coefficients",
    'B': "P_{y,w} - P_{z,w} has nonnegative coefficients for y <= z",
    'C': "h_{x,y;z} has nonnegative coefficients",
    'D': "h_{x,y;z} is balanced unimodal",
    'Ap': "P^+ and P^- have nonnegative coefficients",
    'Bp': "P^+-_{y,w} - P^+-_{z,w} has nonnegative coefficients for twisted involutions y <= z",
    'Bp-restricted': "as Bp, with z <= w",
    'Cp': "h^+ and h^- have nonnegative coefficients",
    'Dp': "h^+ and h^- are balanced unimodal",
    'parity': "constants lie in Z[u^2] or uZ[u^2] by length parity and are balanced",
    'integrality': "(F + F^sigma) / 2 and (F - F^sigma) / 2 are integral",
}


@dataclass
class PropertyReport:
    """Outcome of one check. A failing report always names a witness."""
    prop: str
    verdict: str
    checked: int = 0
    witness: Optional[Key] = None
    witness_poly: Optional[LaurentPoly] = None
    family: str = ''
    note: str = ''
    labels: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict != 'fails'

    def to_dict(self) -> Dict:
        return {
            'property': self.prop,
            'verdict': self.verdict,
            'checked': self.checked,
            'family': self.family or None,
            'witness': list(self.witness) if self.witness is not None else None,
            'witness_labels': self.labels or None,
            'witness_poly': str(self.witness_poly) if self.witness_poly is not None else None,
            'note': self.note or None,
        }

    def text(self) -> str:
        line = f"{self.prop}: {self.verdict} ({self.checked:,} entries"
        if self.family:
            line += f", {self.family}"
        line += ")"
        if self.witness is not None:
            where = ", ".join(self.labels) if self.labels else ", ".join(map(str, self.witness))
            line += f"\n  witness [{where}]: {self.witness_poly}"
        if self.note:
            line += f"\n  {self.note}"
        return line


def reports_json(reports: Sequence[PropertyReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def label_witness(report: PropertyReport, system) -> PropertyReport:
    """Attach reduced-word labels for the witness indices."""
    if report.witness is not None:
        report.labels = [system.element(i).label() for i in report.witness]
    return report


class CoefficientCheck:
    """Accumulator applying a predicate to every fed polynomial."""

    def __init__(self, prop: str, predicate: Callable[[LaurentPoly], bool], family: str = ''):
        self.prop = prop
        self.predicate = predicate
        self.family = family
        self.checked = 0
        self.witness: Optional[Tuple[Key, LaurentPoly]] = None

    def feed(self, key: Key, poly: LaurentPoly) -> None:
        self.checked += 1
        if self.witness is None and not self.predicate(poly):
            self.witness = (tuple(key), poly)

    def feed_all(self, entries: Iterable[Tuple[Key, LaurentPoly]]) -> 'CoefficientCheck':
        for key, poly in entries:
            self.feed(key, poly)
        return self

    def report(self) -> PropertyReport:
        if self.witness is None:
            return PropertyReport(self.prop, 'holds', self.checked, family=self.family)
        key, poly = self.witness
        return PropertyReport(self.prop, 'fails', self.checked, key, poly, family=self.family)


def nonneg_check(prop: str, family: str = '') -> CoefficientCheck:
    return CoefficientCheck(prop, LaurentPoly.is_nonneg, family)


def unimodal_check(prop: str, family: str = '') -> CoefficientCheck:
    return CoefficientCheck(prop, LaurentPoly.is_balanced_unimodal, family)


def merge(prop: str, reports: Sequence[PropertyReport]) -> PropertyReport:
    """Combine per-family reports; the first failing one supplies the witness."""
    checked = sum(r.checked for r in reports)
    for r in reports:
        if r.verdict == 'fails':
            return PropertyReport(prop, 'fails', checked, r.witness, r.witness_poly,
                                  family=r.family, note=r.note)
    families = ", ".join(r.family for r in reports if r.family)
    return PropertyReport(prop, 'holds', checked, family=families)


def skipped(prop: str, reason: str) -> PropertyReport:
    return PropertyReport(prop, 'skipped', note=reason)


def _halves_of(split) -> List[Tuple[str, Iterable]]:
    stem = 'P' if split.kind == 'split-polys' else 'h'
    return [(f"{stem}+", split.items('+')), (f"{stem}-", split.items('-'))]


# -- A / C ------------------------------------------------------------------

def check_A(table) -> PropertyReport:
    """A on a KLTable, A' on a split-polys SplitTable."""
    if getattr(table, 'kind', None) == 'split-polys':
        return merge('Ap', [nonneg_check('Ap', fam).feed_all(items).report()
                            for fam, items in _halves_of(table)])
    return nonneg_check('A', 'P').feed_all(table.items()).report()


def check_C(table) -> PropertyReport:
    """C on the h ConstantsTable, C' on a split-constants SplitTable."""
    if getattr(table, 'kind', None) == 'split-constants':
        return merge('Cp', [nonneg_check('Cp', fam).feed_all(items).report()
                            for fam, items in _halves_of(table)])
    return nonneg_check('C', table.kind).feed_all(table.items()).report()


def check_D(table) -> PropertyReport:
    """D on the h ConstantsTable, D' on a split-constants SplitTable."""
    if getattr(table, 'kind', None) == 'split-constants':
        return merge('Dp', [unimodal_check('Dp', fam).feed_all(items).report()
                            for fam, items in _halves_of(table)])
    return unimodal_check('D', table.kind).feed_all(table.items()).report()


# -- B / B' -----------------------------------------------------------------

def lower_covers(system, keys: Sequence[int]) -> Dict[int, List[int]]:
    """
    Lower covers of each element of `keys` in the Bruhat order restricted to
    `keys`. Any y <= z in `keys` is joined by a chain of these covers.
    """
    bruhat = system.bruhat
    mask = 0
    for k in keys:
        mask |= 1 << k
    covers: Dict[int, List[int]] = {}
    for z in keys:
        below = bruhat.ideal(z) & mask & ~(1 << z)
        shadowed = 0
        for x in iter_bits(below):
            shadowed |= bruhat.ideal(x) & ~(1 << x)
        covers[z] = list(iter_bits(below & ~shadowed))
    return covers


def _decreasing(prop: str, family: str, system, keys: Sequence[int],
                get: Callable[[int, int], LaurentPoly], include_outside: bool) -> PropertyReport:
    """
    P_{y,w} - P_{z,w} >= 0 for y <= z in `keys`, w fixed, telescoped over covers.

    With include_outside, z ranges over all of `keys`: for z not below w the
    difference is P_{y,w} itself.
    """
    bruhat = system.bruhat
    covers = lower_covers(system, keys)
    keyset = set(keys)
    check = nonneg_check(prop, family)
    for w in sorted(keys):
        below = [z for z in iter_bits(bruhat.ideal(w)) if z in keyset]
        for z in below:
            pz = get(z, w)
            for y in covers[z]:
                check.feed((y, z, w), get(y, w) - pz)
            if include_outside:
                check.feed((z, w), get(z, w))
    return check.report()


def check_B(table, restricted: bool = False) -> PropertyReport:
    """
    B on a KLTable, B' on a split-polys SplitTable.

    B' reads the quantifier literally (z any twisted involution above y); with
    restricted=True only z <= w is checked.
    """
    system = table.system
    if getattr(table, 'kind', None) == 'split-polys':
        prop = 'Bp-restricted' if restricted else 'Bp'
        keys = system.involutions
        reports = []
        for sign in ('+', '-'):
            def get(y, w, sign=sign):
                return table.get(sign, y, w)
            reports.append(_decreasing(prop, f"P{sign}", system, keys, get, not restricted))
        return merge(prop, reports)
    return _decreasing('B', 'P', system, range(system.universe.size), table.get, True)


# -- parity / integrality ---------------------------------------------------

def parity_predicate(system, kind: str) -> Callable[[Key, LaurentPoly], bool]:
    """The u-ring membership rule for a constants family, plus balancedness."""
    length = system.universe.length
    if kind == 'h':
        def odd(key):
            return bool((length[key[0]] + length[key[1]] + length[key[2]]) & 1)
    else:
        def odd(key):
            return bool((length[key[1]] + length[key[2]]) & 1)

    def ok(key, poly):
        return poly.in_u_ring(odd(key)) and poly.is_balanced()
    return ok


class ParityCheck(CoefficientCheck):
    def __init__(self, system, kind: str):
        super().__init__('parity', lambda p: True, kind)
        self._rule = parity_predicate(system, kind)

    def feed(self, key: Key, poly: LaurentPoly) -> None:
        self.checked += 1
        if self.witness is None and not self._rule(key, poly):
            self.witness = (tuple(key), poly)


def check_parity(table) -> PropertyReport:
    """Parity rule on l(x)+l(y)+l(z) for h, on l(y)+l(z) for the twisted families."""
    if getattr(table, 'kind', None) == 'split-constants':
        return merge('parity', [ParityCheck(table.system, half.kind).feed_all(half.items()).report()
                                for half in (table.plus, table.minus)])
    return ParityCheck(table.system, table.kind).feed_all(table.items()).report()


class IntegralityCheck:
    """Accumulator over (key, full, sigma) triples; records the first inexact halving."""

    def __init__(self, family: str):
        self.family = family
        self.checked = 0
        self.witness: Optional[Tuple[Key, LaurentPoly]] = None

    def feed(self, key: Key, full: LaurentPoly, sigma: LaurentPoly) -> None:
        self.checked += 1
        try:
            halves(full, sigma)
        except NonIntegralError:
            if self.witness is None:
                self.witness = (tuple(key), full + sigma)

    def report(self) -> PropertyReport:
        if self.witness is None:
            return PropertyReport('integrality', 'holds', self.checked, family=self.family)
        key, poly = self.witness
        return PropertyReport('integrality', 'fails', self.checked, key, poly, family=self.family)


def check_integrality(kl, sigma, htilde=None, hsigma=None) -> PropertyReport:
    """Exactness of both splits: P^+- over pairs of twisted involutions, h^+- when given."""
    polys = IntegralityCheck('P+-')
    for w in sigma.system.involutions:
        for y, ps in sorted(sigma.column(w).items()):
            polys.feed((y, w), kl.get(y, w), ps)
    reports = [polys.report()]
    if htilde is not None and hsigma is not None:
        consts = IntegralityCheck('h+-')
        for x in sorted(set(htilde.xs()) | set(hsigma.xs())):
            t, s = htilde.slice(x), hsigma.slice(x)
            for y in sorted(set(t) | set(s)):
                trow, srow = t.get(y, {}), s.get(y, {})
                for z in sorted(set(trow) | set(srow)):
                    consts.feed((x, y, z), trow.get(z, ZERO), srow.get(z, ZERO))
        reports.append(consts.report())
    return merge('integrality', reports)
