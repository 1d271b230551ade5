"""Tests for classical KL polynomials and the structure constants h and f."""

import pytest

from core.kl import compute_f, compute_h, compute_kl, mu
from core.laurent import LaurentPoly, ONE, U, ZERO, Q_PLUS_ONE
from core.verification import bar_oracle_c


class TestKLPolynomials:
    @pytest.mark.parametrize("label", ["A2", "BC2", "G2", "I2(5)", "I2(9)"])
    def test_rank_two_is_all_ones(self, manager, label):
        m = manager(label)
        s = m.system
        kl = m.kl()
        for w in range(s.size):
            for y in range(s.size):
                expected = ONE if s.bruhat_leq(y, w) else ZERO
                assert kl.get(y, w) == expected

    def test_a3_singular_pair(self, manager):
        m = manager("A3")
        s = m.system
        kl = m.kl()
        w = s.element_from_word([1, 0, 2, 1])
        assert kl.get(0, w) == Q_PLUS_ONE
        assert kl.get(s.element_from_word([1]), w) == Q_PLUS_ONE
        assert kl.get(s.element_from_word([0]), w) == ONE

    @pytest.mark.parametrize("label", ["A3", "BC3", "H3", "A1xA2"])
    def test_degree_bound_and_diagonal(self, manager, label):
        m = manager(label)
        u = m.system.universe
        kl = m.kl()
        for (y, w), p in kl.items():
            if y == w:
                assert p == ONE
            else:
                assert p.is_q_polynomial()
                assert p.degree() <= u.length[w] - u.length[y] - 1
                assert p.coefficient(0) == 1

    def test_extremal_shortcut_agrees(self, system):
        s = system("H3")
        plain = compute_kl(s)
        shortcut = compute_kl(s, extremal_shortcut=True)
        assert list(plain.items()) == list(shortcut.items())

    @pytest.mark.parametrize("label", ["A3", "BC3"])
    def test_matches_bar_oracle(self, manager, label):
        m = manager(label)
        s = m.system
        kl = m.kl()
        length = s.universe.length
        for w in range(s.size):
            c = bar_oracle_c(s, w)
            for y, p in c.items():
                assert p.shift(length[w]) == kl.get(y, w)

    def test_c_s(self, system):
        s = system("A2")
        c = bar_oracle_c(s, 1)
        v_inv = LaurentPoly.monomial(-1)
        assert dict(c.items()) == {0: v_inv, 1: v_inv}


class TestMu:
    def test_even_gap_is_zero(self, manager):
        m = manager("A3")
        s = m.system
        kl = m.kl()
        assert mu(kl, 0, s.size - 1) == 0
        assert mu(kl, 0, s.element_from_word([0, 1])) == 0

    def test_not_below_is_zero(self, manager):
        m = manager("A2")
        s = m.system
        assert mu(m.kl(), s.element_from_word([0]), s.element_from_word([1])) == 0

    def test_covers_have_mu_one(self, manager):
        m = manager("BC3")
        s = m.system
        length = s.universe.length
        kl = m.kl()
        for w in range(s.size):
            for y in range(w):
                if length[w] - length[y] == 1 and s.bruhat_leq(y, w):
                    assert mu(kl, y, w) == 1

    def test_mu_edges_match_table(self, manager):
        m = manager("A3")
        kl = m.kl()
        for w in range(m.system.size):
            edges = dict(kl.mu_edges[w])
            for y in range(w):
                assert edges.get(y, 0) == kl.mu(y, w)


class TestStructureConstants:
    def test_a1(self, manager):
        h = manager("A1").h()
        assert h.get(1, 1, 1) == U
        assert h.get(1, 1, 0) == ZERO
        assert h.get(0, 1, 1) == ONE
        assert h.get(1, 0, 1) == ONE

    @pytest.mark.parametrize("label", ["A2", "A3", "BC2", "A1xA1"])
    def test_identity_and_unit(self, manager, label):
        m = manager(label)
        h = m.h()
        n = m.system.size
        for y in range(n):
            assert h.row(0, y) == {y: ONE}
            assert h.row(y, 0) == {y: ONE}

    @pytest.mark.parametrize("label", ["A2", "BC2", "A3"])
    def test_associativity(self, manager, label):
        m = manager(label)
        h = m.h()
        n = m.system.size
        for w in range(n):
            for x in range(n):
                for y in range(0, n, 3):
                    left = compute_f(h, w, x, y)
                    right: dict = {}
                    for g, p in h.row(x, y).items():
                        for z, r in h.row(w, g).items():
                            right[z] = right.get(z, ZERO) + p * r
                    right = {z: p for z, p in right.items() if p}
                    assert left == right

    @pytest.mark.parametrize("label", ["A3", "BC3"])
    def test_nonnegative_and_symmetric(self, manager, label):
        for _, p in manager(label).h().items():
            assert p.is_nonneg()
            assert p.is_bar_symmetric()

    def test_h_s_s_s_everywhere(self, manager):
        m = manager("BC3")
        h = m.h()
        for g in range(3):
            s = m.system.element_from_word([g])
            assert h.row(s, s) == {s: U}

    def test_f_in_a1(self, manager):
        h = manager("A1").h()
        # c_s^3 = (v + v^-1)^2 c_s
        assert compute_f(h, 1, 1, 1) == {1: U * U}

    def test_compute_h_without_store(self, system):
        s = system("A2")
        kl = compute_kl(s)
        h = compute_h(s, kl)
        assert h.kind == 'h'
        assert len(h) == len(list(h.items()))
