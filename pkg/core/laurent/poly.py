"""
Laurent Polynomials

Exact integer Laurent polynomials in v, stored densely as an offset plus a
coefficient tuple. q = v^2 and u = v + v^-1 are derived notions.
"""

from typing import Dict, Iterator, List, Optional, Sequence, Tuple


class NonIntegralError(ArithmeticError):
    """An exact integer operation (halving, division by q+1) was not exact."""


def _strip(offset: int, coeffs: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    lo = 0
    hi = len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return offset + lo, tuple(coeffs[lo:hi])


class LaurentPoly:
    """
    Immutable Laurent polynomial sum(coeffs[i] * v^(offset + i)).

    The zero polynomial has offset 0 and empty coeffs. Coefficients are
    Python ints, so there is no overflow.
    """

    __slots__ = ('offset', 'coeffs', '_hash')

    offset: int
    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = (), offset: int = 0):
        off, cs = _strip(offset, coeffs)
        object.__setattr__(self, 'offset', off)
        object.__setattr__(self, 'coeffs', cs)
        object.__setattr__(self, '_hash', None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> 'LaurentPoly':
        return cls((c,), 0)

    @classmethod
    def monomial(cls, exponent: int, c: int = 1) -> 'LaurentPoly':
        return cls((c,), exponent)

    @classmethod
    def from_dict(cls, terms: Dict[int, int]) -> 'LaurentPoly':
        """Build from an exponent -> coefficient map (exponents in v)."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls(coeffs, lo)

    @classmethod
    def from_q(cls, coeffs: Sequence[int]) -> 'LaurentPoly':
        """Polynomial in q: coeffs[i] is the coefficient of q^i = v^(2i)."""
        dense = [0] * max(2 * len(coeffs) - 1, 0)
        for i, c in enumerate(coeffs):
            dense[2 * i] = c
        return cls(dense, 0)

    # -- basic accessors ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree(self) -> int:
        """Maximal exponent in v; 0 for the zero polynomial."""
        if not self.coeffs:
            return 0
        return self.offset + len(self.coeffs) - 1

    def min_degree(self) -> int:
        return self.offset if self.coeffs else 0

    def coefficient(self, k: int) -> int:
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> Iterator[Tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        off = self.offset
        for i, c in enumerate(self.coeffs):
            if c:
                yield off + i, c

    def to_dict(self) -> Dict[int, int]:
        return dict(self.terms())

    def max_coefficient(self) -> Optional[int]:
        """Largest nonzero coefficient, or None for the zero polynomial."""
        nonzero = [c for c in self.coeffs if c]
        return max(nonzero) if nonzero else None

    # -- ring operations ----------------------------------------------

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        out = [0] * (hi - lo)
        base = self.offset - lo
        for i, c in enumerate(self.coeffs):
            out[base + i] = c
        base = other.offset - lo
        for i, c in enumerate(other.coeffs):
            out[base + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        if not self.coeffs:
            return self
        return LaurentPoly([-c for c in self.coeffs], self.offset)

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'LaurentPoly':
        return (-self) + other

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a = self.coeffs
        b = other.coeffs
        if not a or not b:
            return ZERO
        if len(a) == 1:
            c = a[0]
            return LaurentPoly([c * x for x in b], self.offset + other.offset)
        if len(b) == 1:
            c = b[0]
            return LaurentPoly([c * x for x in a], self.offset + other.offset)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(out, self.offset + other.offset)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'LaurentPoly':
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, k: int) -> 'LaurentPoly':
        if k == 0 or not self.coeffs:
            return ZERO
        if k == 1:
            return self
        return LaurentPoly([k * c for c in self.coeffs], self.offset)

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by v^k."""
        if not self.coeffs or k == 0:
            return self
        return LaurentPoly(self.coeffs, self.offset + k)

    def substitute_v2(self) -> 'LaurentPoly':
        """f(v^2): every exponent doubled."""
        if not self.coeffs:
            return self
        out = [0] * (2 * len(self.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return LaurentPoly(out, 2 * self.offset)

    def bar(self) -> 'LaurentPoly':
        """f(v^-1)."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs[::-1], -self.degree())

    def halve(self) -> 'LaurentPoly':
        """Exact f / 2."""
        if any(c & 1 for c in self.coeffs):
            raise NonIntegralError(f"cannot halve {self}: odd coefficient")
        return LaurentPoly([c // 2 for c in self.coeffs], self.offset)

    def divide_q_plus_one(self) -> 'LaurentPoly':
        """Exact f / (1 + v^2), by synthetic division from the lowest exponent."""
        if not self.coeffs:
            return self
        n = len(self.coeffs)
        if n < 3:
            raise NonIntegralError(f"{self} is not divisible by q+1")
        quot = [0] * (n - 2)
        for i in range(n - 2):
            quot[i] = self.coeffs[i] - (quot[i - 2] if i >= 2 else 0)
        # the top two coefficients must be matched by the quotient exactly
        for i in (n - 2, n - 1):
            expected = quot[i - 2] if i >= 2 else 0
            if self.coeffs[i] != expected:
                raise NonIntegralError(f"{self} is not divisible by q+1")
        return LaurentPoly(quot, self.offset)

    def evaluate_q(self, value: int) -> int:
        """Evaluate a polynomial in q (even exponents only) at q = value."""
        total = 0
        for e, c in self.terms():
            if e & 1:
                raise ValueError(f"{self} is not a Laurent polynomial in q")
            k = e // 2
            if k >= 0:
                total += c * value ** k
            else:
                if value not in (1, -1):
                    raise ValueError("negative q-powers evaluate only at q = ±1")
                total += c * value ** (-k)
        return total

    # -- predicates -----------------------------------------------------

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_q_polynomial(self) -> bool:
        """True iff f lies in Z[q]: nonnegative even exponents only."""
        if not self.coeffs:
            return True
        return self.offset >= 0 and all(c == 0 for e, c in self.terms() if e & 1)

    def q_degree(self) -> int:
        return self.degree() // 2

    def is_bar_symmetric(self) -> bool:
        if not self.coeffs:
            return True
        return self.offset == -self.degree() and self.coeffs == self.coeffs[::-1]

    def _q_sequence(self) -> Optional[List[int]]:
        """Coefficients a_0..a_d of v^d f in q, or None if v^d f is not in Z[q]."""
        d = self.degree()
        seq = [0] * (d + 1)
        for e, c in self.terms():
            k = e + d
            if k < 0 or k & 1:
                return None
            seq[k // 2] = c
        return seq

    def is_balanced(self) -> bool:
        if not self.coeffs:
            return True
        seq = self._q_sequence()
        return seq is not None and seq == seq[::-1]

    def is_balanced_unimodal(self) -> bool:
        if not self.coeffs:
            return True
        seq = self._q_sequence()
        if seq is None or seq != seq[::-1]:
            return False
        if any(c < 0 for c in seq):
            return False
        i = 0
        n = len(seq)
        while i + 1 < n and seq[i] <= seq[i + 1]:
            i += 1
        while i + 1 < n and seq[i] >= seq[i + 1]:
            i += 1
        return i == n - 1

    def in_u_ring(self, odd: bool) -> bool:
        """
        Membership in Z[u^2] (odd=False) or u Z[u^2] (odd=True), u = v + v^-1.

        Symmetric Laurent polynomials are exactly Z[u]; the exponent parity
        decides which half.
        """
        if not self.coeffs:
            return True
        if not self.is_bar_symmetric():
            return False
        want = 1 if odd else 0
        return all((e & 1) == want for e, _ in self.terms())

    def half_split(self) -> Tuple['LaurentPoly', 'LaurentPoly']:
        """(f^+, f^-) = ((f^2 + f(v^2)) / 2, (f^2 - f(v^2)) / 2)."""
        square = self * self
        doubled = self.substitute_v2()
        return (square + doubled).halve(), (square - doubled).halve()

    # -- comparison, hashing ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.offset == other.offset and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.offset, self.coeffs))
            object.__setattr__(self, '_hash', h)
        return h

    def __reduce__(self):
        return (LaurentPoly, (self.coeffs, self.offset))

    # -- rendering ----------------------------------------------------

    def to_json(self) -> Dict[str, int]:
        """Exponent (as string) -> coefficient, increasing exponent order."""
        return {str(e): c for e, c in self.terms()}

    @classmethod
    def from_json(cls, data: Dict[str, int]) -> 'LaurentPoly':
        return cls.from_dict({int(e): int(c) for e, c in data.items()})

    @staticmethod
    def _render(terms: List[Tuple[int, int]], var: str) -> str:
        if not terms:
            return "0"
        parts = []
        for e, c in reversed(terms):
            if e == 0:
                body = str(abs(c))
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self._render(list(self.terms()), "v")

    def to_q_string(self) -> str:
        """Render in q when all exponents are even, otherwise in v."""
        terms = list(self.terms())
        if any(e & 1 for e, _ in terms):
            return str(self)
        return self._render([(e // 2, c) for e, c in terms], "q")

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
V = LaurentPoly.monomial(1)
Q = LaurentPoly.monomial(2)
U = LaurentPoly((1, 0, 1), -1)            # v + v^-1
Q_PLUS_ONE = LaurentPoly((1, 0, 1), 0)    # q + 1
