"""Tests for configuration loading."""

from pathlib import Path

import pytest

from core.config import CONFIG_ENV, KLVConfig, load_config, parse_config


class TestParseConfig:
    def test_defaults(self):
        config = parse_config(None)
        assert config == KLVConfig()
        assert config.limits.element_cap == 10_000_000
        assert config.limits.oracle_max_elements == 120
        assert config.compute.threads == 1
        assert config.compute.fast_contraction
        assert config.storage.format == 'json'
        assert not config.storage.use_cache

    def test_partial_sections(self):
        config = parse_config({'compute': {'threads': 4}, 'storage': {'format': 'binary'}})
        assert config.compute.threads == 4
        assert config.compute.intern_polys
        assert config.storage.format == 'binary'
        assert config.limits == KLVConfig().limits

    @pytest.mark.parametrize("raw", [
        ['not', 'a', 'mapping'],
        {'limits': 'big'},
        {'limits': {'element_cap': 0}},
        {'compute': {'threads': 0}},
        {'compute': {'threads': True}},
        {'compute': {'memory_limit_mb': -1}},
        {'compute': {'fast_contraction': 'yes'}},
        {'storage': {'format': 'xml'}},
    ])
    def test_invalid(self, raw):
        with pytest.raises(ValueError):
            parse_config(raw)


class TestLoadConfig:
    def test_no_file_gives_defaults(self, isolated_config):
        config = load_config()
        assert config == KLVConfig()
        assert config.source is None

    def test_user_config(self, isolated_config):
        user = isolated_config / '.klv' / 'config.yaml'
        user.parent.mkdir()
        user.write_text("limits:\n  element_cap: 500\n")
        config = load_config()
        assert config.limits.element_cap == 500
        assert config.source == str(user)

    def test_environment_wins_over_user_config(self, isolated_config, monkeypatch):
        user = isolated_config / '.klv' / 'config.yaml'
        user.parent.mkdir()
        user.write_text("limits:\n  element_cap: 500\n")
        env = isolated_config / 'env.yaml'
        env.write_text("limits:\n  element_cap: 700\n")
        monkeypatch.setenv(CONFIG_ENV, str(env))
        assert load_config().limits.element_cap == 700

    def test_explicit_path(self, isolated_config):
        path = isolated_config / 'klv.yaml'
        path.write_text("compute:\n  threads: 3\n  extremal_shortcut: true\n")
        config = load_config(str(path))
        assert config.compute.threads == 3
        assert config.compute.extremal_shortcut

    def test_explicit_missing(self, isolated_config):
        with pytest.raises(FileNotFoundError):
            load_config(str(isolated_config / 'absent.yaml'))

    def test_env_missing(self, isolated_config, monkeypatch):
        monkeypatch.setenv(CONFIG_ENV, str(isolated_config / 'absent.yaml'))
        with pytest.raises(FileNotFoundError):
            load_config()

    def test_invalid_yaml(self, isolated_config):
        path = isolated_config / 'broken.yaml'
        path.write_text("compute: [threads: 2\n")
        with pytest.raises(ValueError):
            load_config(str(path))

    def test_empty_file(self, isolated_config):
        path = isolated_config / 'empty.yaml'
        path.write_text("")
        assert load_config(str(path)).limits == KLVConfig().limits

    def test_shipped_template_parses(self):
        template = Path(__file__).resolve().parent.parent / 'templates' / 'config.yaml'
        config = load_config(str(template))
        assert config.compute.threads >= 1
