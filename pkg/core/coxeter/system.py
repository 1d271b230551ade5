"""
Coxeter Systems

Builds a finite Coxeter system with a diagram involution, enumerates its
elements in (length, ShortLex) order and exposes lengths, descents,
multiplication, Bruhat order, the star action, twisted involutions and the
twisted action s ⋉ w.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .bruhat import BruhatOrder
from .catalogue import TypeFactor, coxeter_matrix, diagram_twist, parse_label
from .classify import classify, validate_matrix
from .errors import CoxeterError, ElementCapExceeded
from .models import ProductModel, model_for_block

logger = logging.getLogger(__name__)

DEFAULT_ELEMENT_CAP = 10_000_000

TwistSpec = Union[str, Sequence[int], None]


@dataclass(frozen=True)
class Element:
    """A group element as seen from outside the index tables."""
    index: int
    word: Tuple[int, ...]
    length: int
    left_descents: int
    right_descents: int

    def label(self) -> str:
        """Reduced word with 1-based generator labels, '1' for the identity."""
        if not self.word:
            return "1"
        return "".join(f"s{i + 1}" for i in self.word)


TwistedInvolution = Element


class Universe:
    """
    All elements of an enumerated system plus derived index tables.

    Index order is (length, ShortLex word); index 0 is the identity and the
    last index is the longest element.
    """

    def __init__(self, rank: int, words: List[Tuple[int, ...]], length: List[int],
                 left: List[List[int]], components: Optional[List[Tuple[int, ...]]]):
        self.rank = rank
        self.size = len(words)
        self.words = words
        self.length = length
        self.left = left
        self.components = components
        self.ldesc = [0] * self.size
        for i in range(rank):
            row = left[i]
            bit = 1 << i
            for w in range(self.size):
                if length[row[w]] < length[w]:
                    self.ldesc[w] |= bit
        self.inverse = [0] * self.size
        for w, word in enumerate(words):
            cur = 0
            for letter in word:
                cur = left[letter][cur]
            self.inverse[w] = cur
        inv = self.inverse
        self.right = [[inv[row[inv[w]]] for w in range(self.size)] for row in left]
        self.rdesc = [self.ldesc[inv[w]] for w in range(self.size)]
        self.star: List[int] = list(range(self.size))

    def apply_twist(self, twist: Tuple[int, ...]) -> None:
        if all(twist[i] == i for i in range(self.rank)):
            self.star = list(range(self.size))
            return
        star = [0] * self.size
        for w in range(1, self.size):
            s = self.words[w][0]
            star[w] = self.left[twist[s]][star[self.left[s][w]]]
        self.star = star

    def first_left_descent(self, w: int) -> int:
        mask = self.ldesc[w]
        return (mask & -mask).bit_length() - 1


def _enumerate_model(model, rank: int, cap: int, name: str):
    """Breadth-first closure; returns states, lengths and the left table in BFS order."""
    start = model.initial()
    index: Dict = {start: 0}
    states = [start]
    lengths = [0]
    left: List[List[int]] = [[] for _ in range(rank)]
    w = 0
    while w < len(states):
        st = states[w]
        next_length = lengths[w] + 1
        for i in range(rank):
            t = model.act(i, st)
            j = index.get(t)
            if j is None:
                if len(states) >= cap:
                    raise ElementCapExceeded(cap, name)
                j = len(states)
                index[t] = j
                states.append(t)
                lengths.append(next_length)
            left[i].append(j)
        w += 1
    return states, lengths, left


def _canonical_order(rank: int, lengths: List[int], left: List[List[int]]):
    """ShortLex normal forms and the permutation into (length, word) order."""
    n = len(lengths)
    words: List[Optional[Tuple[int, ...]]] = [None] * n
    words[0] = ()
    for w in range(1, n):  # BFS order has nondecreasing length
        lw = lengths[w]
        for i in range(rank):
            u = left[i][w]
            if lengths[u] < lw:
                words[w] = (i,) + words[u]
                break
    order = sorted(range(n), key=lambda x: (lengths[x], words[x]))
    new_of = [0] * n
    for new, old in enumerate(order):
        new_of[old] = new
    new_left = [[new_of[row[old]] for old in order] for row in left]
    return order, [words[old] for old in order], [lengths[old] for old in order], new_left


class CoxeterSystem:
    """
    A finite Coxeter system (W, S) with diagram involution *.

    Enumeration happens on first use of `universe`; everything after that is
    read-only.
    """

    def __init__(self, name: str, matrix: List[List[int]], twist: Sequence[int],
                 blocks: Sequence['CoxeterSystem'] = (),
                 block_generators: Sequence[Sequence[int]] = (),
                 element_cap: int = DEFAULT_ELEMENT_CAP,
                 label: Optional[str] = None):
        self.name = name
        self.matrix = validate_matrix(matrix)
        self.twist = tuple(twist)
        self.blocks = list(blocks)
        self.block_generators = [list(g) for g in block_generators]
        self.element_cap = element_cap
        self.label = label or name
        self._validate_twist()
        self._universe: Optional[Universe] = None
        self._bruhat: Optional[BruhatOrder] = None
        self._involutions: Optional[List[int]] = None
        self._ltimes: Optional[List[List[int]]] = None
        self._component_index: Optional[Dict[Tuple[int, ...], int]] = None

    def _validate_twist(self) -> None:
        n = self.rank
        sigma = self.twist
        if len(sigma) != n or sorted(sigma) != list(range(n)):
            raise CoxeterError(f"twist {sigma} is not a permutation of the {n} generators")
        if any(sigma[sigma[i]] != i for i in range(n)):
            raise CoxeterError(f"twist {sigma} is not an involution")
        for i in range(n):
            for j in range(n):
                if self.matrix[sigma[i]][sigma[j]] != self.matrix[i][j]:
                    raise CoxeterError(f"twist {sigma} does not preserve the Coxeter matrix")

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.label!r})"

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def is_twisted(self) -> bool:
        return any(self.twist[i] != i for i in range(self.rank))

    @property
    def is_reducible(self) -> bool:
        return len(self.blocks) > 1

    # -- enumeration ------------------------------------------------------

    @property
    def universe(self) -> Universe:
        if self._universe is None:
            self.enumerate()
        assert self._universe is not None
        return self._universe

    def enumerate(self, cap: Optional[int] = None) -> Universe:
        """Enumerate W; raises ElementCapExceeded past the cap."""
        if self._universe is not None:
            return self._universe
        cap = cap or self.element_cap
        started = time.monotonic()
        if self.is_reducible:
            total = 1
            for block in self.blocks:
                block.enumerate(cap)
                total *= block.universe.size
                if total > cap:
                    raise ElementCapExceeded(cap, self.label)
            generator_map = [(0, 0)] * self.rank
            for b, gens in enumerate(self.block_generators):
                for j, g in enumerate(gens):
                    generator_map[g] = (b, j)
            model = ProductModel([blk.universe.left for blk in self.blocks], generator_map)
        else:
            model = model_for_block(self.matrix)
        states, lengths, left = _enumerate_model(model, self.rank, cap, self.label)
        order, words, lengths, left = _canonical_order(self.rank, lengths, left)
        components = [states[old] for old in order] if self.is_reducible else None
        universe = Universe(self.rank, words, lengths, left, components)
        universe.apply_twist(self.twist)
        self._universe = universe
        logger.info(f"{self.label}: enumerated {universe.size:,} elements "
                    f"(max length {lengths[-1]}) in {time.monotonic() - started:.2f}s")
        return universe

    # -- elements ---------------------------------------------------------

    @property
    def size(self) -> int:
        return self.universe.size

    def element(self, w: int) -> Element:
        u = self.universe
        return Element(w, u.words[w], u.length[w], u.ldesc[w], u.rdesc[w])

    def length(self, w: int) -> int:
        return self.universe.length[w]

    def word(self, w: int) -> Tuple[int, ...]:
        return self.universe.words[w]

    def element_from_word(self, word: Sequence[int]) -> int:
        left = self.universe.left
        cur = 0
        for letter in reversed(word):
            cur = left[letter][cur]
        return cur

    def multiply(self, x: int, y: int) -> int:
        u = self.universe
        cur = y
        for letter in reversed(u.words[x]):
            cur = u.left[letter][cur]
        return cur

    def inverse(self, w: int) -> int:
        return self.universe.inverse[w]

    def star(self, w: int) -> int:
        return self.universe.star[w]

    def left_mult(self, s: int, w: int) -> int:
        return self.universe.left[s][w]

    def right_mult(self, w: int, s: int) -> int:
        return self.universe.right[s][w]

    def has_left_descent(self, w: int, s: int) -> bool:
        return bool(self.universe.ldesc[w] >> s & 1)

    def left_descents(self, w: int) -> List[int]:
        mask = self.universe.ldesc[w]
        return [s for s in range(self.rank) if mask >> s & 1]

    def longest_element(self) -> Element:
        return self.element(self.universe.size - 1)

    # -- Bruhat order ---------------------------------------------------

    @property
    def bruhat(self) -> BruhatOrder:
        if self._bruhat is None:
            self._bruhat = BruhatOrder(self.universe)
        return self._bruhat

    def bruhat_leq(self, y: int, w: int) -> bool:
        return self.bruhat.leq(y, w)

    # -- twisted involutions ---------------------------------------------

    @property
    def involutions(self) -> List[int]:
        """Indices of the twisted involutions w* = w^-1, in index order."""
        if self._involutions is None:
            u = self.universe
            self._involutions = [w for w in range(u.size) if u.star[w] == u.inverse[w]]
        return self._involutions

    def twisted_involutions(self) -> List[TwistedInvolution]:
        return [self.element(w) for w in self.involutions]

    def is_twisted_involution(self, w: int) -> bool:
        u = self.universe
        return u.star[w] == u.inverse[w]

    def twisted_conjugate(self, s: int, w: int) -> int:
        """s w s*."""
        u = self.universe
        return u.left[s][u.right[self.twist[s]][w]]

    def ltimes(self, s: int, w: int) -> int:
        """s ⋉ w: sw if s w s* = w, else s w s*."""
        t = self.twisted_conjugate(s, w)
        if t == w:
            return self.universe.left[s][w]
        return t

    def is_commuting_step(self, s: int, w: int) -> bool:
        """True when s w = w s*, i.e. s ⋉ w = sw."""
        u = self.universe
        return u.left[s][w] == u.right[self.twist[s]][w]

    def ltimes_table(self) -> List[List[int]]:
        """ltimes_table()[s][w] for twisted involutions w (-1 elsewhere)."""
        if self._ltimes is None:
            table = [[-1] * self.universe.size for _ in range(self.rank)]
            for s in range(self.rank):
                row = table[s]
                for w in self.involutions:
                    row[w] = self.ltimes(s, w)
            self._ltimes = table
        return self._ltimes

    # -- products ---------------------------------------------------------

    def components(self, w: int) -> Tuple[int, ...]:
        """Block element indices of w (a 1-tuple for irreducible systems)."""
        comps = self.universe.components
        if comps is None:
            return (w,)
        return comps[w]

    def element_from_components(self, parts: Sequence[int]) -> int:
        if not self.is_reducible:
            return parts[0]
        if self._component_index is None:
            comps = self.universe.components or []
            self._component_index = {c: w for w, c in enumerate(comps)}
        return self._component_index[tuple(parts)]

    def describe(self) -> Dict:
        """Header description used by table files."""
        return {
            'name': self.label,
            'matrix': self.matrix,
            'twist': list(self.twist),
        }


def _block_system(name: str, matrix: List[List[int]], comp: List[int],
                  twist: Sequence[int], cap: int) -> CoxeterSystem:
    sub = [[matrix[i][j] for j in comp] for i in comp]
    if {twist[g] for g in comp} == set(comp):
        local = [comp.index(twist[g]) for g in comp]
    else:
        local = list(range(len(comp)))
    label = name
    if any(local[i] != i for i in range(len(local))):
        label = "2" + name
    return CoxeterSystem(name, sub, local, element_cap=cap, label=label)


def _assemble(matrix: List[List[int]], twist: Sequence[int], name: str, label: str,
              cap: int) -> CoxeterSystem:
    parts = classify(matrix)
    if len(parts) == 1:
        return CoxeterSystem(name, matrix, twist, element_cap=cap, label=label)
    blocks = [_block_system(part_name, matrix, comp, twist, cap) for part_name, comp in parts]
    return CoxeterSystem(name, matrix, twist, blocks=blocks,
                         block_generators=[comp for _, comp in parts],
                         element_cap=cap, label=label)


def _block_diagonal(blocks: List[List[List[int]]]) -> List[List[int]]:
    n = sum(len(b) for b in blocks)
    matrix = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    base = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, m in enumerate(row):
                matrix[base + i][base + j] = m
        base += len(b)
    return matrix


def _parse_twist_list(twist: Sequence[int], rank: int) -> Tuple[int, ...]:
    perm = tuple(int(t) for t in twist)
    if len(perm) != rank:
        raise CoxeterError(f"twist has {len(perm)} entries for rank {rank}")
    return perm


def build_system(spec: Union[str, Sequence[Sequence[int]]], twist: TwistSpec = None,
                 element_cap: int = DEFAULT_ELEMENT_CAP) -> CoxeterSystem:
    """
    Build a validated Coxeter system.

    Args:
        spec: type label ("A3", "2D4", "I2(7)", "A1xA2") or an explicit Coxeter matrix
        twist: None/'identity', 'diagram', 'swap', or an explicit 0-based permutation
        element_cap: enumeration limit

    Raises:
        CoxeterError: invalid matrix, twist or label
        InfiniteTypeError: the matrix does not define a finite group
    """
    if isinstance(spec, str):
        return _build_from_label(spec, twist, element_cap)
    matrix = validate_matrix(spec)
    rank = len(matrix)
    if twist is None or twist == 'identity':
        perm = tuple(range(rank))
    elif isinstance(twist, str):
        raise CoxeterError(f"twist '{twist}' needs a type label; give an explicit permutation")
    else:
        perm = _parse_twist_list(twist, rank)
    names = [name for name, _ in classify(matrix)]
    name = "x".join(names)
    return _assemble(matrix, perm, name, name, element_cap)


def _build_from_label(label: str, twist: TwistSpec, cap: int) -> CoxeterSystem:
    factors = parse_label(label)
    any_prefix = any(f.twisted for f in factors)
    if twist == 'diagram':
        if len(factors) != 1:
            raise CoxeterError("'diagram' twist applies to a single irreducible type; "
                               "prefix factors with 2 instead")
        if diagram_twist(factors[0]) is None:
            raise CoxeterError(f"type {factors[0].name} has no nontrivial diagram involution")
        factors = [TypeFactor(factors[0].family, factors[0].rank, factors[0].m, True)]
    elif twist == 'identity' and any_prefix:
        raise CoxeterError(f"label '{label}' is twisted but twist 'identity' was requested")
    elif twist == 'swap':
        if len(factors) != 1 or any_prefix:
            raise CoxeterError("'swap' takes a single untwisted factor W' and builds W'xW'")
        factors = [factors[0], factors[0]]

    matrices = [coxeter_matrix(f) for f in factors]
    matrix = _block_diagonal(matrices)
    rank = len(matrix)
    perm = list(range(rank))
    base = 0
    for f, m in zip(factors, matrices):
        if f.twisted:
            local = diagram_twist(f)
            assert local is not None
            for i, t in enumerate(local):
                perm[base + i] = base + t
        base += len(m)
    name = "x".join(f.name for f in factors)
    full_label = "x".join(f.label for f in factors)
    if twist == 'swap':
        k = len(matrices[0])
        perm = [i + k for i in range(k)] + list(range(k))
        full_label = f"{name}[swap]"
    elif twist not in (None, 'identity', 'diagram'):
        if isinstance(twist, str):
            raise CoxeterError(f"unknown twist '{twist}' (identity, diagram, swap or a permutation)")
        perm = list(_parse_twist_list(twist, rank))
        if any(perm[i] != i for i in range(rank)):
            full_label = f"{name}[{','.join(str(p + 1) for p in perm)}]"
    return _assemble(matrix, perm, name, full_label, cap)


def enumerate_system(system: CoxeterSystem, cap: Optional[int] = None) -> Universe:
    return system.enumerate(cap)
