"""
Hecke vectors: finitely supported element-index -> Laurent polynomial maps
tagged with the basis they are written in.
"""

from typing import Dict, Iterator, Optional, Tuple

from core.laurent import LaurentPoly, ZERO, ONE

Coeffs = Dict[int, LaurentPoly]

BASES = {
    't': "standard basis of H_q",
    'c': "KL basis of H_q",
    'T': "standard basis of H_{q^2}",
    'C': "KL basis of H_{q^2}",
    'a': "standard basis of the twisted-involution module",
    'A': "KL-type basis of the twisted-involution module",
}


def add_term(acc: Coeffs, w: int, poly: LaurentPoly) -> None:
    """acc[w] += poly, dropping the key when the sum vanishes."""
    if not poly:
        return
    cur = acc.get(w)
    if cur is None:
        acc[w] = poly
        return
    total = cur + poly
    if total:
        acc[w] = total
    else:
        del acc[w]


def add_scaled(acc: Coeffs, vec: Coeffs, factor: LaurentPoly) -> None:
    """acc += factor * vec."""
    if not factor:
        return
    if factor == ONE:
        for w, p in vec.items():
            add_term(acc, w, p)
        return
    for w, p in vec.items():
        add_term(acc, w, factor * p)


class HeckeVector:
    """Immutable-by-convention sparse vector in one of the bases in BASES."""

    __slots__ = ('basis', 'coeffs')

    def __init__(self, basis: str, coeffs: Optional[Coeffs] = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis tag '{basis}'")
        self.basis = basis
        self.coeffs: Coeffs = {w: p for w, p in (coeffs or {}).items() if p}

    @classmethod
    def basis_element(cls, basis: str, w: int) -> 'HeckeVector':
        return cls(basis, {w: ONE})

    def __getitem__(self, w: int) -> LaurentPoly:
        return self.coeffs.get(w, ZERO)

    def items(self) -> Iterator[Tuple[int, LaurentPoly]]:
        for w in sorted(self.coeffs):
            yield w, self.coeffs[w]

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: 'HeckeVector') -> None:
        if other.basis != self.basis:
            raise ValueError(f"cannot combine {self.basis}-basis and {other.basis}-basis vectors")

    def __add__(self, other: 'HeckeVector') -> 'HeckeVector':
        self._check(other)
        acc = dict(self.coeffs)
        add_scaled(acc, other.coeffs, ONE)
        return HeckeVector(self.basis, acc)

    def __sub__(self, other: 'HeckeVector') -> 'HeckeVector':
        self._check(other)
        acc = dict(self.coeffs)
        for w, p in other.coeffs.items():
            add_term(acc, w, -p)
        return HeckeVector(self.basis, acc)

    def scaled(self, factor: LaurentPoly) -> 'HeckeVector':
        acc: Coeffs = {}
        add_scaled(acc, self.coeffs, factor)
        return HeckeVector(self.basis, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeVector):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"HeckeVector({self.basis}: 0)"
        terms = ", ".join(f"{w}: {p}" for w, p in self.items())
        return f"HeckeVector({self.basis}: {terms})"
