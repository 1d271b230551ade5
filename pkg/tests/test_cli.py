"""Tests for the klv command line."""

import json

import pytest

from cli import klv
from core.kl import KLComputationError
from core.laurent import ONE
from core.storage import cache_load, loads
from core.storage.codec import MAGIC
from core.verification import PropertyReport, ZERO_FAMILY


@pytest.fixture(autouse=True)
def no_user_config(isolated_config):
    return isolated_config


class TestTypes:
    def test_lists_catalogue(self, capsys):
        assert klv.main(['types']) == klv.EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("type")
        assert "2D4" in out
        assert "H3" in out


class TestCompute:
    def test_to_file(self, tmp_path):
        out = tmp_path / "2a3.json"
        assert klv.main(['compute', '--type', '2A3', '--table', 'psigma',
                         '--out', str(out)]) == klv.EXIT_OK
        tf = cache_load(out)
        assert tf.kind == 'psigma'
        assert tf.system['name'] == "2A3"

    def test_binary_to_stdout(self, capsysbinary):
        assert klv.main(['compute', '--type', 'A2', '--table', 'h',
                         '--format', 'binary']) == klv.EXIT_OK
        data = capsysbinary.readouterr().out
        assert data.startswith(MAGIC)
        assert loads(data).kind == 'h'

    def test_output_is_deterministic(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            assert klv.main(['compute', '--type', 'BC2', '--table', 'split-constants',
                             '--out', str(p)]) == klv.EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_matrix_with_twist_list(self, tmp_path):
        out = tmp_path / "m.json"
        assert klv.main(['compute', '--matrix', '1,3;3,1', '--twist', '2,1',
                         '--out', str(out)]) == klv.EXIT_OK
        assert cache_load(out).system['twist'] == [1, 0]

    def test_cache_flag_writes_cache(self, isolated_config, tmp_path):
        assert klv.main(['compute', '--type', 'A2', '--table', 'kl', '--cache',
                         '--out', str(tmp_path / "kl.json")]) == klv.EXIT_OK
        assert list((isolated_config / 'cache').glob("A2-kl.*"))

    def test_unwritable_output(self, tmp_path):
        out = tmp_path / "missing" / "dir" / "t.json"
        assert klv.main(['compute', '--type', 'A1', '--out', str(out)]) == klv.EXIT_USAGE


class TestVerify:
    def test_primed_properties(self, capsys):
        assert klv.main(['verify', '--type', '2A3', '--properties', 'Ap,Bp,Cp,Dp']) == klv.EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("2A3:")
        for prop in ("Ap: holds", "Bp: holds", "Bp-restricted: holds", "Cp: holds", "Dp: holds"):
            assert prop in out

    def test_json_report(self, capsys):
        assert klv.main(['verify', '--type', 'A2', '--properties', 'A,C',
                         '--oracle', 'bar,module,parity,integrality', '--json']) == klv.EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert [r['property'] for r in doc] == ['A', 'C', 'bar', 'module', 'parity', 'integrality']
        assert all(r['verdict'] == 'holds' for r in doc)

    def test_product_oracle(self, capsys):
        assert klv.main(['verify', '--type', 'A1', '--oracle', 'product']) == klv.EXIT_OK
        assert "f_{" in capsys.readouterr().out

    def test_factorization_oracle(self, capsys):
        assert klv.main(['verify', '--type', 'A1xA2', '--oracle', 'factorization']) == klv.EXIT_OK

    def test_oracle_over_limit_is_skipped(self, capsys, tmp_path):
        config = tmp_path / "small.yaml"
        config.write_text("limits:\n  oracle_max_elements: 4\n")
        assert klv.main(['verify', '--type', 'A2', '--oracle', 'bar',
                         '--config', str(config)]) == klv.EXIT_OK
        assert "bar: skipped" in capsys.readouterr().out

    def test_failure_exits_one(self, capsys, monkeypatch):
        def failing(table):
            return PropertyReport('A', 'fails', 1, (0, 1), ONE - ONE.shift(2))
        monkeypatch.setattr(klv, 'check_A', failing)
        assert klv.main(['verify', '--type', 'A1', '--properties', 'A']) == klv.EXIT_FAILED
        out = capsys.readouterr().out
        assert "A: fails" in out
        assert "witness [1, s1]" in out

    def test_computation_error_exits_one(self, monkeypatch):
        def broken(*args, **kwargs):
            raise KLComputationError("inconsistent recursion")
        monkeypatch.setattr('core.engine.manager.compute_kl', broken)
        assert klv.main(['verify', '--type', 'A2', '--properties', 'A']) == klv.EXIT_FAILED

    def test_nothing_to_verify(self):
        assert klv.main(['verify', '--type', 'A2']) == klv.EXIT_USAGE

    def test_unknown_property(self):
        assert klv.main(['verify', '--type', 'A2', '--properties', 'E']) == klv.EXIT_USAGE


class TestStats:
    def test_polys_csv(self, capsys):
        assert klv.main(['stats', '--type', 'A1', '--type', 'H3']) == klv.EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            f"A1,1,1,-1,1,{ZERO_FAMILY}",
            "H3,3,1,1,2,1",
        ]

    def test_constants_with_header(self, capsys):
        assert klv.main(['stats', '--type', 'A1', '--set', 'constants', '--header']) == klv.EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            "type,htilde,hsigma,-hsigma,h+,h-",
            "A1,2,1,-1,1,1",
        ]

    def test_json(self, capsys):
        assert klv.main(['stats', '--type', '2A3', '--format', 'json']) == klv.EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc == [{'type': '2A3', 'P': 1, 'Psigma': 1, '-Psigma': 1, 'P+': 1, 'P-': 1}]


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ['compute', '--type', 'Q7'],
        ['compute', '--type', 'A3', '--twist', '1,x'],
        ['compute', '--type', 'A3', '--twist', '0,1,2'],
        ['compute', '--type', 'A3', '--twist', '2,1,3'],
        ['compute', '--type', 'A2', '--matrix', '1,3;3,1'],
        ['compute', '--matrix', '1,3;3'],
        ['compute'],
        ['compute', '--type', 'A2', '--threads', '0'],
        ['compute', '--type', 'A2', '--config', '/nonexistent/klv.yaml'],
        ['compute', '--type', 'A2', '--table', 'nope'],
        ['frobnicate'],
        [],
    ])
    def test_usage_errors(self, argv):
        assert klv.main(argv) == klv.EXIT_USAGE

    def test_help(self, capsys):
        assert klv.main(['--help']) == klv.EXIT_OK

    def test_element_cap(self):
        assert klv.main(['compute', '--type', 'A3', '--cap', '10']) == klv.EXIT_CAP

    def test_bad_config_value(self, tmp_path):
        config = tmp_path / "bad.yaml"
        config.write_text("compute:\n  threads: many\n")
        assert klv.main(['stats', '--type', 'A1', '--config', str(config)]) == klv.EXIT_USAGE
