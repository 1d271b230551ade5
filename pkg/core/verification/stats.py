"""
Coefficient Statistics

Maximum nonzero coefficients per family, in the column order

    polys      P (on twisted involutions), P^sigma, -P^sigma, P^+, P^-
    constants  h-tilde, h^sigma, -h^sigma, h^+, h^-

A negated column is the largest nonzero coefficient of the negated family,
i.e. minus the smallest nonzero coefficient; it is negative when the family is
nonnegative. A family with no nonzero coefficient reports ZERO_FAMILY.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Union

from core.laurent import LaurentPoly

ZERO_FAMILY = "all polynomials zero"

POLY_COLUMNS = ('P', 'Psigma', '-Psigma', 'P+', 'P-')
CONSTANT_COLUMNS = ('htilde', 'hsigma', '-hsigma', 'h+', 'h-')
SETS = {'polys': POLY_COLUMNS, 'constants': CONSTANT_COLUMNS}

Value = Union[int, str]


class CoefficientRange:
    """Running max and min over the nonzero coefficients of fed polynomials."""

    def __init__(self):
        self.largest: Optional[int] = None
        self.smallest: Optional[int] = None
        self.entries = 0

    def feed(self, poly: LaurentPoly) -> None:
        self.entries += 1
        for c in poly.coeffs:
            if not c:
                continue
            if self.largest is None or c > self.largest:
                self.largest = c
            if self.smallest is None or c < self.smallest:
                self.smallest = c

    def feed_all(self, polys: Iterable[LaurentPoly]) -> 'CoefficientRange':
        for p in polys:
            self.feed(p)
        return self

    def max_value(self) -> Value:
        return ZERO_FAMILY if self.largest is None else self.largest

    def negated_max_value(self) -> Value:
        return ZERO_FAMILY if self.smallest is None else -self.smallest


@dataclass
class StatsRow:
    """One table row: the type label and one value per column."""
    label: str
    set_name: str
    values: Dict[str, Value]

    @property
    def columns(self) -> Sequence[str]:
        return SETS[self.set_name]

    def as_list(self) -> List[Value]:
        return [self.values[c] for c in self.columns]

    def to_dict(self) -> Dict:
        return {'type': self.label, **{c: self.values[c] for c in self.columns}}


def make_row(label: str, set_name: str, full: CoefficientRange, sigma: CoefficientRange,
             plus: CoefficientRange, minus: CoefficientRange) -> StatsRow:
    cols = SETS[set_name]
    values = {
        cols[0]: full.max_value(),
        cols[1]: sigma.max_value(),
        cols[2]: sigma.negated_max_value(),
        cols[3]: plus.max_value(),
        cols[4]: minus.max_value(),
    }
    return StatsRow(label, set_name, values)


def poly_stats(kl, sigma, split) -> StatsRow:
    """Table row for the polynomial families over pairs of twisted involutions."""
    system = sigma.system
    full = CoefficientRange().feed_all(p for _, p in kl.items(restrict=system.involutions))
    sig = CoefficientRange().feed_all(p for _, p in sigma.items())
    plus = CoefficientRange().feed_all(p for _, p in split.items('+'))
    minus = CoefficientRange().feed_all(p for _, p in split.items('-'))
    return make_row(system.label, 'polys', full, sig, plus, minus)


class ConstantStatsAccumulator:
    """Feeds per-slice h-tilde, h^sigma, h^+ and h^- data into one row."""

    def __init__(self, label: str):
        self.label = label
        self.tilde = CoefficientRange()
        self.sigma = CoefficientRange()
        self.plus = CoefficientRange()
        self.minus = CoefficientRange()

    @staticmethod
    def _feed_slice(rng: CoefficientRange, sl) -> None:
        for row in sl.values():
            for p in row.values():
                rng.feed(p)

    def feed(self, tilde, sigma, plus, minus) -> None:
        self._feed_slice(self.tilde, tilde)
        self._feed_slice(self.sigma, sigma)
        self._feed_slice(self.plus, plus)
        self._feed_slice(self.minus, minus)

    def row(self) -> StatsRow:
        return make_row(self.label, 'constants', self.tilde, self.sigma, self.plus, self.minus)


def constant_stats(htilde, hsigma, split) -> StatsRow:
    """Table row for the constants families from materialised tables."""
    acc = ConstantStatsAccumulator(htilde.system.label)
    for x in sorted(set(htilde.xs()) | set(hsigma.xs())):
        acc.feed(htilde.slice(x), hsigma.slice(x), split.plus.slice(x), split.minus.slice(x))
    return acc.row()


def format_rows(rows: Sequence[StatsRow], fmt: str = 'csv', header: bool = False) -> str:
    """Render rows as csv, json or aligned text."""
    if not rows:
        return ""
    columns = ['type'] + list(rows[0].columns)
    if fmt == 'csv':
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        if header:
            writer.writerow(columns)
        for r in rows:
            writer.writerow([r.label] + r.as_list())
        return buf.getvalue()
    if fmt == 'json':
        return json.dumps([r.to_dict() for r in rows], indent=2) + "\n"
    if fmt == 'text':
        table = [columns] + [[r.label] + [str(v) for v in r.as_list()] for r in rows]
        widths = [max(len(str(line[i])) for line in table) for i in range(len(columns))]
        lines = ["  ".join(str(cell).rjust(w) for cell, w in zip(line, widths)) for line in table]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown stats format '{fmt}'")
