"""Tests for h^sigma, h-tilde and the h-tilde contraction paths."""

import threading
import time

import pytest

import core.twisted.constants as constants_module
from core.laurent import ONE, U, ZERO
from core.twisted import (
    ModuleCAction, compute_hsigma, compute_htilde, htilde_slice, iter_htilde_slices,
)
from core.twisted.constants import window_size
from core.verification import module_identity_oracle


class TestHsigma:
    @pytest.mark.parametrize("label", ["A2", "2A2", "2A3", "BC3"])
    def test_identity_slice(self, manager, label):
        mgr = manager(label)
        hsigma = mgr.hsigma()
        for y in mgr.system.involutions:
            assert hsigma.row(0, y) == {y: ONE}

    def test_generator_slice_is_the_action(self, manager):
        mgr = manager("2A3")
        s = mgr.system
        hsigma = mgr.hsigma()
        action = ModuleCAction(s, mgr.sigma())
        for g in range(s.rank):
            x = s.element_from_word([g])
            for w in s.involutions:
                assert hsigma.row(x, w) == dict(action.terms(g, w))

    def test_descent_multiplies_by_q_plus_q_inverse(self, manager):
        mgr = manager("A2")
        s = mgr.system
        hsigma = mgr.hsigma()
        x = s.element_from_word([0])
        q_sum = (U * U) - ONE.scale(2)
        for w in s.involutions:
            if s.has_left_descent(w, 0):
                assert hsigma.row(x, w) == {w: q_sum}

    @pytest.mark.parametrize("label", ["A2", "2A2", "A3", "2A3", "BC2", "2BC2", "I2(5)"])
    def test_module_identity(self, manager, label):
        mgr = manager(label)
        report = module_identity_oracle(mgr.system, mgr.kl(), mgr.sigma(), mgr.hsigma())
        assert report.verdict == 'holds', report.text()

    @pytest.mark.parametrize("label", ["2A3", "BC3", "H3"])
    def test_parity_rule(self, manager, label):
        mgr = manager(label)
        length = mgr.system.universe.length
        for (x, y, z), p in mgr.hsigma().items():
            assert p.in_u_ring(bool((length[y] + length[z]) & 1))

    def test_direct_call_matches_manager(self, manager):
        mgr = manager("2A2")
        table = compute_hsigma(mgr.system, mgr.sigma(), mgr.kl())
        assert list(table.items()) == list(mgr.hsigma().items())


class TestHtilde:
    @pytest.mark.parametrize("label", ["A1", "A2", "2A3"])
    def test_identity_slice(self, manager, label):
        mgr = manager(label)
        htilde = mgr.htilde()
        for y in mgr.system.involutions:
            assert htilde.row(0, y) == {y: ONE}

    def test_a1(self, manager):
        mgr = manager("A1")
        htilde = mgr.htilde()
        # c_s c_s c_s = (v + v^-1)^2 c_s
        assert htilde.get(1, 1, 1) == U * U
        assert htilde.get(1, 0, 1) == U
        assert htilde.get(1, 0, 0) == ZERO

    @pytest.mark.parametrize("label", ["A3", "2A3", "BC3"])
    def test_fast_path_is_exact(self, manager, label):
        mgr = manager(label)
        s = mgr.system
        h = mgr.h()
        for x in range(s.size):
            assert htilde_slice(s, h, x, fast=True) == htilde_slice(s, h, x, fast=False)

    def test_threads_keep_order(self, manager):
        mgr = manager("2A3")
        s = mgr.system
        h = mgr.h()
        serial = list(iter_htilde_slices(s, h, threads=1))
        parallel = list(iter_htilde_slices(s, h, threads=4))
        assert [x for x, _ in parallel] == list(range(s.size))
        assert serial == parallel

    def test_threads_bound_pending_slices(self, manager, monkeypatch):
        mgr = manager("2A3")
        s = mgr.system
        h = mgr.h()
        started = []
        lock = threading.Lock()

        def counting(system, table, x, fast=True):
            with lock:
                started.append(x)
            return htilde_slice(system, table, x, fast)
        monkeypatch.setattr(constants_module, 'htilde_slice', counting)
        consumed = 0
        for x, _ in iter_htilde_slices(s, h, threads=4):
            consumed += 1
            time.sleep(0.001)
            with lock:
                assert len(started) <= consumed + window_size(4)
        assert consumed == s.size
        assert sorted(started) == list(range(s.size))

    @pytest.mark.parametrize("label", ["A3", "BC3"])
    def test_nonnegative_and_balanced(self, manager, label):
        for _, p in manager(label).htilde().items():
            assert p.is_nonneg()
            assert p.is_balanced()

    def test_materialised_matches_stream(self, manager):
        mgr = manager("BC2")
        s = mgr.system
        table = compute_htilde(s, mgr.h(), threads=2)
        for x, sl in iter_htilde_slices(s, mgr.h()):
            assert table.slice(x) == sl
