"""Tests for table files, the table cache and the slice store."""

import json

import pytest

from core.config import KLVConfig
from core.coxeter import build_system
from core.engine import ComputationManager
from core.kl import ConstantsTable
from core.laurent import LaurentPoly, ONE
from core.storage import (
    CacheManager, ChecksumError, SliceStore, TableFile, TableFormatError, TruncatedFileError,
    VersionMismatchError, cache_load, cache_store, checksum, dumps, element_dictionary, loads,
)
from core.storage.codec import MAGIC


@pytest.fixture
def psigma_file(manager):
    return manager("2A3").table_file('psigma')


def json_doc(tf):
    return json.loads(dumps(tf, 'json'))


class TestJsonContainer:
    def test_round_trip(self, psigma_file):
        again = loads(dumps(psigma_file, 'json'))
        assert again.kind == 'psigma'
        assert again.system == psigma_file.system
        assert again.elements == psigma_file.elements
        assert again.families == psigma_file.sorted_families()

    def test_deterministic(self, manager):
        tf = manager("BC2").table_file('split-polys')
        assert dumps(tf, 'json') == dumps(manager("BC2").table_file('split-polys'), 'json')

    def test_header(self, psigma_file, system):
        header = json_doc(psigma_file)['header']
        assert header['format_version'] == 1
        assert header['kind'] == 'psigma'
        assert header['system']['name'] == "2A3"
        assert header['system']['twist'] == [2, 1, 0]
        assert header['elements'][0] == []
        assert header['elements'] == element_dictionary(system("2A3"))
        assert header['families'] == {'Psigma': len(psigma_file.families['Psigma'])}
        assert header['checksum'] == checksum(psigma_file.sorted_families())

    def test_version_mismatch(self, psigma_file):
        doc = json_doc(psigma_file)
        doc['header']['format_version'] = 2
        with pytest.raises(VersionMismatchError):
            loads(json.dumps(doc).encode())

    def test_checksum_mismatch(self, psigma_file):
        doc = json_doc(psigma_file)
        doc['header']['checksum'] += 1
        with pytest.raises(ChecksumError):
            loads(json.dumps(doc).encode())

    def test_edited_entry_is_caught(self, psigma_file):
        doc = json_doc(psigma_file)
        doc['families']['Psigma'][0][-1] = {"0": 7}
        with pytest.raises(ChecksumError):
            loads(json.dumps(doc).encode())

    def test_missing_entries(self, psigma_file):
        doc = json_doc(psigma_file)
        doc['families']['Psigma'].pop()
        with pytest.raises(TruncatedFileError):
            loads(json.dumps(doc).encode())

    def test_truncated(self, psigma_file):
        data = dumps(psigma_file, 'json')
        with pytest.raises(TruncatedFileError):
            loads(data[:len(data) // 2])

    def test_schema_violation(self, psigma_file):
        doc = json_doc(psigma_file)
        doc['header']['kind'] = 'bogus'
        with pytest.raises(TableFormatError):
            loads(json.dumps(doc).encode())

    def test_missing_sections(self):
        with pytest.raises(TableFormatError):
            loads(b'{"header": {}}')


class TestBinaryContainer:
    def test_round_trip(self, psigma_file):
        data = dumps(psigma_file, 'binary')
        assert data.startswith(MAGIC)
        again = loads(data)
        assert again.families == psigma_file.sorted_families()
        assert again.elements == psigma_file.elements

    def test_big_coefficients(self):
        big = LaurentPoly([3 ** 80, -(2 ** 70), 1], -2)
        tf = TableFile('h', {'name': "A1", 'matrix': [[1]], 'twist': [0]}, [[], [1]],
                       {'h': [((1, 1, 1), big), ((0, 0, 0), ONE)]})
        again = loads(dumps(tf, 'binary'))
        assert again.families['h'] == [((0, 0, 0), ONE), ((1, 1, 1), big)]

    def test_version_mismatch(self, psigma_file):
        data = bytearray(dumps(psigma_file, 'binary'))
        data[len(MAGIC)] = 9
        with pytest.raises(VersionMismatchError):
            loads(bytes(data))

    def test_truncated(self, psigma_file):
        data = dumps(psigma_file, 'binary')
        with pytest.raises(TruncatedFileError):
            loads(data[:-7])

    def test_crc_mismatch(self, psigma_file):
        data = bytearray(dumps(psigma_file, 'binary'))
        data[-1] ^= 0xFF
        with pytest.raises(ChecksumError):
            loads(bytes(data))

    def test_trailing_bytes(self, psigma_file):
        with pytest.raises(TableFormatError):
            loads(dumps(psigma_file, 'binary') + b"\x00")

    def test_unknown_format_name(self, psigma_file):
        with pytest.raises(ValueError):
            dumps(psigma_file, 'xml')


class TestFiles:
    @pytest.mark.parametrize("fmt", ["json", "binary"])
    def test_store_and_load(self, tmp_path, psigma_file, fmt):
        path = cache_store(tmp_path / "sub" / "t.tbl", psigma_file, fmt)
        assert path.exists()
        assert cache_load(path).families == psigma_file.sorted_families()

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_bytes(b"")
        with pytest.raises(TruncatedFileError):
            cache_load(path)

    def test_constants_round_trip(self, manager):
        mgr = manager("A2")
        tf = loads(dumps(mgr.table_file('h'), 'binary'))
        again = ConstantsTable.from_families('h', mgr.system, tf.families, SliceStore())
        assert list(again.items()) == list(mgr.h().items())


class TestCacheManager:
    def test_cache_dir_from_environment(self, isolated_config):
        cache = CacheManager()
        assert cache.cache_dir == isolated_config / 'cache'
        assert cache.cache_dir.is_dir()

    def test_second_manager_reads_cache(self, isolated_config, monkeypatch):
        cache = CacheManager(fmt='binary')
        first = ComputationManager(build_system("2A2"), KLVConfig(), cache=cache)
        expected = list(first.sigma().items())
        assert cache.path_for(first.system, 'psigma').exists()
        assert cache.path_for(first.system, 'kl').exists()

        def no_compute(*args, **kwargs):
            raise AssertionError("table should come from the cache")
        monkeypatch.setattr('core.engine.manager.compute_psigma', no_compute)
        monkeypatch.setattr('core.engine.manager.compute_kl', no_compute)
        second = ComputationManager(build_system("2A2"), KLVConfig(), cache=cache)
        assert list(second.sigma().items()) == expected

    def test_stale_file_is_ignored(self, isolated_config):
        cache = CacheManager()
        mgr = ComputationManager(build_system("A2"), KLVConfig(), cache=cache)
        mgr.sigma()
        kl_path = cache.path_for(mgr.system, 'kl')
        kl_path.write_bytes(cache.path_for(mgr.system, 'psigma').read_bytes())
        assert cache.load(mgr.system, 'kl') is None

    def test_other_system_is_stale(self, isolated_config):
        cache = CacheManager()
        a2 = build_system("A2")
        a2.enumerate()
        mgr = ComputationManager(build_system("BC2"), KLVConfig(), cache=cache)
        tf = mgr.table_file('kl')
        cache_store(cache.path_for(a2, 'kl'), tf)
        assert cache.load(a2, 'kl') is None

    def test_unreadable_file_is_ignored(self, isolated_config):
        cache = CacheManager()
        s = build_system("A1")
        s.enumerate()
        cache.path_for(s, 'kl').write_bytes(b"{not json")
        assert cache.load(s, 'kl') is None

    def test_path_is_filesystem_safe(self, isolated_config):
        cache = CacheManager(fmt='binary')
        s = build_system("I2(5)")
        assert cache.path_for(s, 'h').name == "I2_5_-h.bin"


class TestSliceStore:
    @staticmethod
    def slice_for(x):
        return {x: {x + 1: LaurentPoly.from_q([x, 1])}}

    def test_resident(self):
        store = SliceStore()
        for x in range(5):
            store.put(x, self.slice_for(x))
        assert store.xs() == list(range(5))
        assert 3 in store and 7 not in store
        assert store.get(2) == self.slice_for(2)
        with pytest.raises(KeyError):
            store.get(9)

    def test_spill_reads_back(self):
        store = SliceStore(cache_size=2)
        for x in range(6):
            store.put(x, self.slice_for(x))
        store.spill()
        store.put(6, self.slice_for(6))
        assert store.spilling
        assert len(store) == 7
        assert [sl for _, sl in store.items()] == [self.slice_for(x) for x in range(7)]
        store.close()

    def test_spill_dir_is_kept(self, tmp_path):
        store = SliceStore(spill_dir=str(tmp_path / "slices"))
        store.put(0, self.slice_for(0))
        store.spill()
        store.close()
        assert (tmp_path / "slices" / "slice-0.bin").exists()

    def test_memory_limit_triggers_spill(self):
        store = SliceStore(memory_limit_mb=1)
        for x in range(64):
            store.put(x, self.slice_for(x))
        assert store.spilling
        assert store.get(10) == self.slice_for(10)
        store.close()
