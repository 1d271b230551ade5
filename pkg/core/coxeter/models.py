"""
Faithful models used to tell group elements apart during enumeration.

Each model has an initial state (the identity) and a left action of each
generator on states. Equal states mean equal elements.
"""

from typing import Any, List, Sequence, Tuple

from .rings import GoldenInteger

State = Any

# a_ij * a_ji = 4cos^2(pi/m)
_CARTAN_PAIRS = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}


class LatticeModel:
    """
    Action on weight coordinates: s_i sends c to c' with c'_j = c_j - c_i * a_ij.

    The starting vector (1, ..., 1) lies inside the fundamental chamber, so
    its orbit is in bijection with the group.
    """

    def __init__(self, matrix: List[List[int]]):
        n = len(matrix)
        golden = any(matrix[i][j] == 5 for i in range(n) for j in range(n))
        self.golden = golden
        cartan: List[List[Any]] = [[0] * n for _ in range(n)]
        for i in range(n):
            cartan[i][i] = 2
            for j in range(i + 1, n):
                m = matrix[i][j]
                if m == 5:
                    cartan[i][j] = cartan[j][i] = GoldenInteger(0, -1)
                elif m in _CARTAN_PAIRS:
                    cartan[i][j], cartan[j][i] = _CARTAN_PAIRS[m]
                else:
                    raise ValueError(f"label {m} has no lattice model")
        if golden:
            cartan = [[c if isinstance(c, GoldenInteger) else GoldenInteger(c, 0) for c in row]
                      for row in cartan]
        self.rows: List[List[Tuple[int, Any]]] = [
            [(j, cartan[i][j]) for j in range(n) if cartan[i][j] != 0] for i in range(n)
        ]
        one = GoldenInteger(1, 0) if golden else 1
        self._initial = tuple(one for _ in range(n))

    def initial(self) -> State:
        return self._initial

    def act(self, i: int, state: Tuple) -> Tuple:
        ci = state[i]
        out = list(state)
        for j, a in self.rows[i]:
            out[j] = out[j] - ci * a
        return tuple(out)


class DihedralModel:
    """I2(m) as affine maps x -> e*x + r of Z/m; s1: x -> -x, s2: x -> 1 - x."""

    def __init__(self, m: int):
        self.m = m

    def initial(self) -> State:
        return (1, 0)

    def act(self, i: int, state: Tuple[int, int]) -> Tuple[int, int]:
        eps, r = state
        if i == 0:
            return (-eps, -r % self.m)
        return (-eps, (1 - r) % self.m)


class ProductModel:
    """Direct product of already enumerated blocks; states are tuples of block indices."""

    def __init__(self, block_left: Sequence[List[List[int]]], generator_map: Sequence[Tuple[int, int]]):
        self.block_left = block_left
        self.generator_map = generator_map
        self._initial = tuple(0 for _ in block_left)

    def initial(self) -> State:
        return self._initial

    def act(self, i: int, state: Tuple[int, ...]) -> Tuple[int, ...]:
        b, j = self.generator_map[i]
        out = list(state)
        out[b] = self.block_left[b][j][state[b]]
        return tuple(out)


def model_for_block(matrix: List[List[int]]):
    """Pick the smallest exact model for an irreducible block."""
    if len(matrix) == 2 and matrix[0][1] not in (3, 4, 6):
        return DihedralModel(matrix[0][1])
    return LatticeModel(matrix)
