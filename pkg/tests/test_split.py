"""Tests for the P^+- and h^+- splits."""

import pytest

from core.laurent import LaurentPoly, NonIntegralError, ONE, ZERO
from core.twisted import SplitTable, halves, split_constants, split_polys, split_slice


class TestHalves:
    def test_exact(self):
        full = LaurentPoly.from_q([1, 1])
        sigma = LaurentPoly.from_q([1, -1])
        assert halves(full, sigma) == (ONE, LaurentPoly.from_q([0, 1]))

    def test_inexact(self):
        with pytest.raises(NonIntegralError):
            halves(LaurentPoly.from_q([1, 1]), ONE)


class TestSplitPolys:
    @pytest.mark.parametrize("label", ["A3", "2A3", "BC3", "H3"])
    def test_recombines(self, manager, label):
        mgr = manager(label)
        kl, sigma = mgr.kl(), mgr.sigma()
        split = mgr.split_polys()
        for (y, w), ps in sigma.items():
            plus = split.get('+', y, w)
            minus = split.get('-', y, w)
            assert plus + minus == kl.get(y, w)
            assert plus - minus == ps

    def test_minus_half_empty_for_small_type_a(self, manager):
        split = manager("A3").split_polys()
        assert list(split.items('-')) == []

    def test_only_twisted_involutions(self, manager):
        mgr = manager("2A3")
        involutions = set(mgr.system.involutions)
        split = split_polys(mgr.kl(), mgr.sigma())
        for sign in ('+', '-'):
            for (y, w), _ in split.items(sign):
                assert y in involutions and w in involutions

    def test_bad_sign(self, manager):
        with pytest.raises(ValueError):
            manager("A2").split_polys().get('x', 0, 0)

    def test_families_round_trip(self, manager):
        mgr = manager("2A3")
        split = mgr.split_polys()
        again = SplitTable.from_families('split-polys', mgr.system, split.families())
        assert list(again.items('+')) == list(split.items('+'))
        assert list(again.items('-')) == list(split.items('-'))


class TestSplitConstants:
    def test_slice(self):
        tilde = {1: {1: LaurentPoly.from_dict({2: 1, 0: 2, -2: 1})}}
        sigma = {1: {1: LaurentPoly.from_dict({2: 1, -2: 1})}, 2: {2: ONE.scale(2)}}
        plus, minus = split_slice(tilde, sigma)
        assert plus == {1: {1: LaurentPoly.from_dict({2: 1, 0: 1, -2: 1})}, 2: {2: ONE}}
        assert minus == {1: {1: ONE}, 2: {2: -ONE}}

    @pytest.mark.parametrize("label", ["A1", "A2", "2A2", "BC2", "2A3"])
    def test_recombines(self, manager, label):
        mgr = manager(label)
        tilde, hsigma = mgr.htilde(), mgr.hsigma()
        split = split_constants(tilde, hsigma)
        s = mgr.system
        for x in range(s.size):
            for y in s.involutions:
                for z in s.involutions:
                    plus = split.get('+', x, y, z)
                    minus = split.get('-', x, y, z)
                    assert plus + minus == tilde.get(x, y, z)
                    assert plus - minus == hsigma.get(x, y, z)

    def test_a1_plus_entries(self, manager):
        split = manager("A1").split_constants()
        values = {p for _, p in split.items('+')}
        assert values == {
            ONE,
            LaurentPoly.from_dict({1: 1, -1: 1}),
            LaurentPoly.from_dict({2: 1, 0: 1, -2: 1}),
        }

    def test_stream_matches_tables(self, manager):
        mgr = manager("2A2")
        split = mgr.split_constants()
        for x, tilde, sig, plus, minus in mgr.constant_slices():
            assert plus == split.plus.slice(x)
            assert minus == split.minus.slice(x)
            assert tilde == mgr.htilde().slice(x)
            assert sig == mgr.hsigma().slice(x)
            assert all(p != ZERO for row in plus.values() for p in row.values())
