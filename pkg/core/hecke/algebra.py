"""
Hecke algebra H_q in the standard basis t_w.

t_s t_w = t_sw if sw > w, and q t_sw + (q - 1) t_w if sw < w.
"""

from typing import List

from core.laurent import LaurentPoly, ONE, Q
from .vector import Coeffs, HeckeVector, add_term

Q_MINUS_ONE = Q - ONE
Q_INV = LaurentPoly.monomial(-2)
Q_INV_MINUS_ONE = Q_INV - ONE


def left_t(system, s: int, vec: Coeffs) -> Coeffs:
    """t_s * vec."""
    u = system.universe
    row = u.left[s]
    bit = 1 << s
    out: Coeffs = {}
    for w, p in vec.items():
        sw = row[w]
        if u.ldesc[w] & bit:
            add_term(out, sw, Q * p)
            add_term(out, w, Q_MINUS_ONE * p)
        else:
            add_term(out, sw, p)
    return out


def left_t_inverse(system, s: int, vec: Coeffs) -> Coeffs:
    """t_s^-1 * vec with t_s^-1 = q^-1 t_s + (q^-1 - 1)."""
    out: Coeffs = {}
    for w, p in left_t(system, s, vec).items():
        add_term(out, w, Q_INV * p)
    for w, p in vec.items():
        add_term(out, w, Q_INV_MINUS_ONE * p)
    return out


def bar_t_table(system) -> List[Coeffs]:
    """bar(t_w) = (t_{w^-1})^-1 for every w, built as t_s^-1 bar(t_sw)."""
    u = system.universe
    table: List[Coeffs] = [{0: ONE}]
    for w in range(1, u.size):
        s = u.words[w][0]
        table.append(left_t_inverse(system, s, table[u.left[s][w]]))
    return table


def bar_t(system, w: int) -> HeckeVector:
    u = system.universe
    vec: Coeffs = {0: ONE}
    for s in reversed(u.words[w]):
        vec = left_t_inverse(system, s, vec)
    return HeckeVector('t', vec)
