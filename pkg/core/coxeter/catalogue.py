"""
Type Catalogue

Named irreducible finite Coxeter systems, their Coxeter matrices in the
standard generator numbering, and the nontrivial diagram involution of each
type that has one. Also parses type labels such as "2A3", "I2(7)", "A1xA2".
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import CoxeterError

Matrix = List[List[int]]

LABEL_RE = re.compile(
    r'^(?P<twisted>2)?(?P<family>BC|A|B|C|D|E|F|G|H|I)(?P<rank>\d+)(?:\((?P<m>\d+)\))?$'
)


@dataclass(frozen=True)
class TypeFactor:
    """One irreducible factor of a type label."""
    family: str
    rank: int
    m: Optional[int] = None
    twisted: bool = False

    @property
    def name(self) -> str:
        if self.family == 'I':
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def label(self) -> str:
        return ("2" if self.twisted else "") + self.name


@dataclass(frozen=True)
class CatalogueEntry:
    """Row of the type catalogue."""
    name: str
    rank: int
    twist: Optional[Tuple[int, ...]]
    description: str


def _from_edges(n: int, edges: Dict[Tuple[int, int], int]) -> Matrix:
    matrix = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), m in edges.items():
        matrix[i][j] = m
        matrix[j][i] = m
    return matrix


def coxeter_matrix(factor: TypeFactor) -> Matrix:
    """Coxeter matrix of a named irreducible type, generators numbered as in the catalogue."""
    fam, n = factor.family, factor.rank
    if fam == 'A':
        if n < 1:
            raise CoxeterError("A_n needs n >= 1")
        return _from_edges(n, {(i, i + 1): 3 for i in range(n - 1)})
    if fam == 'BC':
        if n < 2:
            raise CoxeterError("BC_n needs n >= 2")
        edges = {(i, i + 1): 3 for i in range(n - 1)}
        edges[(0, 1)] = 4
        return _from_edges(n, edges)
    if fam == 'D':
        if n < 4:
            raise CoxeterError("D_n needs n >= 4")
        edges = {(0, 2): 3, (1, 2): 3}
        edges.update({(i, i + 1): 3 for i in range(2, n - 1)})
        return _from_edges(n, edges)
    if fam == 'E':
        if n not in (6, 7, 8):
            raise CoxeterError(f"E{n} is not a finite type (E6, E7, E8 only)")
        edges = {(0, 2): 3, (2, 3): 3, (1, 3): 3}
        edges.update({(i, i + 1): 3 for i in range(3, n - 1)})
        return _from_edges(n, edges)
    if fam == 'F':
        if n != 4:
            raise CoxeterError(f"F{n} is not a finite type (F4 only)")
        return _from_edges(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})
    if fam == 'G':
        if n != 2:
            raise CoxeterError(f"G{n} is not a finite type (G2 only)")
        return _from_edges(2, {(0, 1): 6})
    if fam == 'H':
        if n not in (3, 4):
            raise CoxeterError(f"H{n} is not a finite type (H3, H4 only)")
        edges = {(0, 1): 5}
        edges.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return _from_edges(n, edges)
    if fam == 'I':
        if n != 2 or factor.m is None:
            raise CoxeterError("dihedral types are written I2(m)")
        if factor.m < 2:
            raise CoxeterError(f"I2({factor.m}) needs m >= 2")
        return _from_edges(2, {(0, 1): factor.m})
    raise CoxeterError(f"unknown type family '{fam}'")


def diagram_twist(factor: TypeFactor) -> Optional[Tuple[int, ...]]:
    """The nontrivial diagram involution of the type, or None if it has none."""
    fam, n = factor.family, factor.rank
    if fam == 'A' and n >= 2:
        return tuple(n - 1 - i for i in range(n))
    if fam == 'D' and n >= 4:
        return (1, 0) + tuple(range(2, n))
    if fam == 'E' and n == 6:
        return (5, 1, 4, 3, 2, 0)
    if fam == 'F' and n == 4:
        return (3, 2, 1, 0)
    if fam in ('G', 'I') or (fam == 'BC' and n == 2):
        if fam == 'I' and factor.m == 2:
            return None
        return (1, 0)
    return None


def parse_label(label: str) -> List[TypeFactor]:
    """
    Parse a type label into its factors.

    Factors are joined with 'x'; each is [2]FAMILY RANK or [2]I2(m).
    B_n and C_n are read as BC_n.
    """
    text = label.strip().replace('×', 'x')
    if not text:
        raise CoxeterError("empty type label")
    factors = []
    for part in text.split('x'):
        match = LABEL_RE.match(part.strip())
        if not match:
            raise CoxeterError(f"unknown type label '{part}'")
        family = match.group('family')
        if family in ('B', 'C'):
            family = 'BC'
        rank = int(match.group('rank'))
        m = int(match.group('m')) if match.group('m') else None
        if family == 'I' and m is None:
            raise CoxeterError(f"'{part}': dihedral types are written I2(m)")
        if family != 'I' and m is not None:
            raise CoxeterError(f"'{part}': only I2(m) takes a parameter")
        factor = TypeFactor(family, rank, m, bool(match.group('twisted')))
        coxeter_matrix(factor)
        if factor.twisted and diagram_twist(factor) is None:
            raise CoxeterError(f"type {factor.name} has no nontrivial diagram involution")
        factors.append(factor)
    return factors


def catalogue() -> List[CatalogueEntry]:
    """Irreducible types with their involutions, as listed by 'klv types'."""
    rows = [
        (TypeFactor('A', 3), "path, all labels 3"),
        (TypeFactor('BC', 3), "s1-s2 labelled 4, then a path"),
        (TypeFactor('D', 4), "s1-s3, s2-s3, then s3-s4-...-sn"),
        (TypeFactor('E', 6), "s1-s3-s4-s5-s6 with s2-s4"),
        (TypeFactor('E', 7), "E6 extended by s6-s7"),
        (TypeFactor('E', 8), "E7 extended by s7-s8"),
        (TypeFactor('F', 4), "s2-s3 labelled 4"),
        (TypeFactor('G', 2), "I2(6)"),
        (TypeFactor('H', 3), "s1-s2 labelled 5"),
        (TypeFactor('H', 4), "s1-s2 labelled 5"),
        (TypeFactor('I', 2, 7), "I2(m), any m >= 3"),
    ]
    entries = []
    for factor, description in rows:
        entries.append(CatalogueEntry(
            name=factor.name,
            rank=factor.rank,
            twist=diagram_twist(factor),
            description=description,
        ))
    return entries
