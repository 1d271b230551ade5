"""
Golden integers Z[phi], phi^2 = phi + 1.

2cos(pi/5) = phi, so the reflection representation of H3, H4 has all its
entries in this ring.
"""

from typing import Union


class GoldenInteger:
    """a + b*phi with integer a, b."""

    __slots__ = ('a', 'b')

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a
        self.b = b

    @staticmethod
    def _coerce(other: Union['GoldenInteger', int]) -> 'GoldenInteger':
        if isinstance(other, GoldenInteger):
            return other
        if isinstance(other, int):
            return GoldenInteger(other, 0)
        raise TypeError(f"cannot combine GoldenInteger with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return GoldenInteger(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GoldenInteger(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return GoldenInteger(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return GoldenInteger(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, GoldenInteger):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __repr__(self):
        return f"GoldenInteger({self.a}, {self.b})"


PHI = GoldenInteger(0, 1)
