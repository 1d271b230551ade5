"""
Classifier for explicit Coxeter matrices.

Splits a matrix into connected components and names the finite type of each
component, raising InfiniteTypeError when a component is not on the finite
list.
"""

import math
from typing import Dict, List, Sequence, Tuple

from .errors import CoxeterError, InfiniteTypeError


def validate_matrix(matrix: Sequence[Sequence]) -> List[List[int]]:
    """Check shape, symmetry, unit diagonal and labels; return an int matrix."""
    n = len(matrix)
    if n == 0:
        raise CoxeterError("Coxeter matrix must have at least one generator")
    out = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise CoxeterError(f"Coxeter matrix row {i + 1} has {len(row)} entries, expected {n}")
        clean = []
        for j, entry in enumerate(row):
            if isinstance(entry, float) and math.isinf(entry):
                raise InfiniteTypeError(f"m[{i + 1}][{j + 1}] = infinity: only finite types")
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise CoxeterError(f"m[{i + 1}][{j + 1}] = {entry!r} is not an integer")
            if i == j and entry != 1:
                raise CoxeterError(f"diagonal entry m[{i + 1}][{i + 1}] must be 1")
            if i != j and entry == 0:
                raise InfiniteTypeError(f"m[{i + 1}][{j + 1}] = 0 (infinity): only finite types")
            if i != j and entry < 2:
                raise CoxeterError(f"off-diagonal entry m[{i + 1}][{j + 1}] must be >= 2")
            clean.append(entry)
        out.append(clean)
    for i in range(n):
        for j in range(i + 1, n):
            if out[i][j] != out[j][i]:
                raise CoxeterError(f"Coxeter matrix is not symmetric at ({i + 1}, {j + 1})")
    return out


def components(matrix: List[List[int]]) -> List[List[int]]:
    """Connected components of the Coxeter graph, each sorted, ordered by first vertex."""
    n = len(matrix)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and matrix[i][j] > 2:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _classify_component(sub: List[List[int]]) -> str:
    n = len(sub)
    if n == 1:
        return "A1"
    edges: Dict[Tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if sub[i][j] > 2:
                edges[(i, j)] = sub[i][j]
    if n == 2:
        m = sub[0][1]
        return {3: "A2", 4: "BC2", 6: "G2"}.get(m, f"I2({m})")
    if len(edges) != n - 1:
        raise InfiniteTypeError("Coxeter graph contains a cycle")
    if max(edges.values()) > 5:
        raise InfiniteTypeError("label >= 6 in rank >= 3")
    heavy = [e for e, m in edges.items() if m >= 4]
    if len(heavy) > 1:
        raise InfiniteTypeError("more than one edge labelled >= 4")
    degree = [0] * n
    neighbours: List[List[int]] = [[] for _ in range(n)]
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
        neighbours[i].append(j)
        neighbours[j].append(i)
    branches = [i for i in range(n) if degree[i] >= 3]
    if branches:
        if len(branches) > 1 or degree[branches[0]] > 3:
            raise InfiniteTypeError("Coxeter graph branches more than once")
        if heavy:
            raise InfiniteTypeError("branched graph with a label >= 4")
        centre = branches[0]
        arms = []
        for start in neighbours[centre]:
            length, prev, cur = 1, centre, start
            while degree[cur] == 2:
                nxt = [k for k in neighbours[cur] if k != prev][0]
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E{n}"
        raise InfiniteTypeError(f"branched graph with arms {tuple(arms)}")
    # a path: find the edge label positions
    end = next(i for i in range(n) if degree[i] == 1)
    order = [end]
    prev = -1
    while len(order) < n:
        cur = order[-1]
        nxt = [k for k in neighbours[cur] if k != prev][0]
        prev = cur
        order.append(nxt)
    labels = [sub[order[k]][order[k + 1]] for k in range(n - 1)]
    if not heavy:
        return f"A{n}"
    position = next(k for k, m in enumerate(labels) if m >= 4)
    at_end = position in (0, n - 2)
    m = labels[position]
    if m == 4:
        if at_end:
            return f"BC{n}"
        if n == 4:
            return "F4"
        raise InfiniteTypeError("label 4 in the middle of a path longer than F4")
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    raise InfiniteTypeError(f"label {m} path of rank {n} is not finite")


def classify(matrix: List[List[int]]) -> List[Tuple[str, List[int]]]:
    """
    Name the finite type of every connected component.

    Returns (type name, generator indices) pairs in component order.
    """
    result = []
    for comp in components(matrix):
        sub = [[matrix[i][j] for j in comp] for i in comp]
        result.append((_classify_component(sub), comp))
    return result
