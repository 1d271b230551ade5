"""
Twisted-involution Module

The H_{q^2}-module with standard basis a_w (w a twisted involution). T_s acts
by one of four rules depending on whether s ⋉ w is sw or s w s*, and whether
it is longer or shorter than w.
"""

import weakref
from typing import Dict, List, Tuple

from core.laurent import LaurentPoly, ONE, Q
from .vector import Coeffs, HeckeVector, add_term

Q2 = Q * Q
Q_PLUS_ONE = Q + ONE
Q2_MINUS_Q = Q2 - Q
Q2_MINUS_Q_MINUS_ONE = Q2 - Q - ONE
Q2_MINUS_ONE = Q2 - ONE
Q_INV2 = LaurentPoly.monomial(-4)
Q_INV2_MINUS_ONE = Q_INV2 - ONE

Terms = List[Tuple[int, LaurentPoly]]


class ModuleActionTable:
    """Cached T_s a_w expansions for one system."""

    def __init__(self, system):
        self.system = system
        self._cache: Dict[Tuple[int, int], Terms] = {}

    def terms(self, s: int, w: int) -> Terms:
        key = (s, w)
        found = self._cache.get(key)
        if found is not None:
            return found
        system = self.system
        length = system.universe.length
        t = system.ltimes(s, w)
        up = length[t] > length[w]
        if system.is_commuting_step(s, w):
            if up:
                terms = [(t, Q_PLUS_ONE), (w, Q)]
            else:
                terms = [(t, Q2_MINUS_Q), (w, Q2_MINUS_Q_MINUS_ONE)]
        else:
            if up:
                terms = [(t, ONE)]
            else:
                terms = [(t, Q2), (w, Q2_MINUS_ONE)]
        self._cache[key] = terms
        return terms

    def act(self, s: int, vec: Coeffs) -> Coeffs:
        """T_s * vec."""
        out: Coeffs = {}
        for w, p in vec.items():
            for z, f in self.terms(s, w):
                add_term(out, z, f * p)
        return out

    def act_inverse(self, s: int, vec: Coeffs) -> Coeffs:
        """T_s^-1 * vec with T_s^-1 = q^-2 T_s + (q^-2 - 1)."""
        out: Coeffs = {}
        for w, p in self.act(s, vec).items():
            add_term(out, w, Q_INV2 * p)
        for w, p in vec.items():
            add_term(out, w, Q_INV2_MINUS_ONE * p)
        return out

    def act_word(self, word, vec: Coeffs) -> Coeffs:
        """T_{s_1} ... T_{s_k} * vec."""
        for s in reversed(word):
            vec = self.act(s, vec)
        return vec

    def bar_basis(self, w: int) -> Coeffs:
        """bar(a_w) = (-1)^l(w) (T_{w^-1})^-1 a_{w^-1}."""
        u = self.system.universe
        vec: Coeffs = {u.inverse[w]: ONE}
        for s in reversed(u.words[w]):
            vec = self.act_inverse(s, vec)
        if u.length[w] & 1:
            vec = {z: -p for z, p in vec.items()}
        return vec


_TABLES: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def action_table(system) -> ModuleActionTable:
    """Shared per-system action cache."""
    table = _TABLES.get(system)
    if table is None:
        table = _TABLES.setdefault(system, ModuleActionTable(system))
    return table


def module_action(system, s: int, vec: HeckeVector) -> HeckeVector:
    """T_s applied to an a-basis vector."""
    if vec.basis != 'a':
        raise ValueError("module_action expects an a-basis vector")
    for w in vec.coeffs:
        if not system.is_twisted_involution(w):
            raise ValueError(f"element {w} is not a twisted involution")
    return HeckeVector('a', action_table(system).act(s, vec.coeffs))


def bar_a(system, w: int) -> HeckeVector:
    """bar(a_w) in the a-basis."""
    return HeckeVector('a', action_table(system).bar_basis(w))


def bar_a_vector(system, vec: HeckeVector) -> HeckeVector:
    """Extend bar semilinearly: bar(sum f_w a_w) = sum bar(f_w) bar(a_w)."""
    table = action_table(system)
    out: Coeffs = {}
    for w, p in vec.coeffs.items():
        pb = p.bar()
        for z, f in table.bar_basis(w).items():
            add_term(out, z, pb * f)
    return HeckeVector('a', out)
