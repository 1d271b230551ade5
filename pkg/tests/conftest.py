"""
Shared fixtures.

Systems and their tables are built once per session through a
ComputationManager, so tests asking for the same (type, twist) share the work.
"""

import random

import pytest

from core.config import KLVConfig
from core.coxeter import build_system
from core.engine import ComputationManager


@pytest.fixture(scope='session')
def manager():
    """manager('A3') or manager('A3', 'diagram') -> cached ComputationManager."""
    built = {}

    def get(label, twist=None):
        key = (label, twist if not isinstance(twist, list) else tuple(twist))
        if key not in built:
            built[key] = ComputationManager(build_system(label, twist), KLVConfig())
        return built[key]

    yield get
    for m in built.values():
        m.close()


@pytest.fixture(scope='session')
def system(manager):
    """system('H3') -> enumerated CoxeterSystem."""
    def get(label, twist=None):
        return manager(label, twist).system
    return get


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """No user config and a private cache directory."""
    monkeypatch.setenv('HOME', str(tmp_path))
    monkeypatch.delenv('KLV_CONFIG', raising=False)
    monkeypatch.setenv('KLV_CACHE_DIR', str(tmp_path / 'cache'))
    return tmp_path
