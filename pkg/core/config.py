"""
KLV Configuration Module

Handles loading and validation of configuration.
"""

import os
import yaml
from typing import Any, Dict, Optional
from dataclasses import dataclass, field

CONFIG_ENV = "KLV_CONFIG"
USER_CONFIG = "~/.klv/config.yaml"
STORAGE_FORMATS = ('json', 'binary')


@dataclass
class LimitsConfig:
    """Size limits."""
    element_cap: int = 10_000_000
    oracle_max_elements: int = 120


@dataclass
class ComputeConfig:
    """Computation settings."""
    threads: int = 1
    intern_polys: bool = True
    extremal_shortcut: bool = False
    fast_contraction: bool = True
    memory_limit_mb: int = 0
    slice_cache_size: int = 64


@dataclass
class StorageConfig:
    """Table cache settings."""
    cache_dir: str = "~/.klv/cache"
    format: str = "json"
    use_cache: bool = False


@dataclass
class KLVConfig:
    """Main KLV configuration."""
    limits: LimitsConfig = field(default_factory=LimitsConfig)
    compute: ComputeConfig = field(default_factory=ComputeConfig)
    storage: StorageConfig = field(default_factory=StorageConfig)
    source: Optional[str] = None


def _section(raw: Dict, name: str) -> Dict[str, Any]:
    value = raw.get(name) or {}
    if not isinstance(value, dict):
        raise ValueError(f"config section '{name}' must be a mapping")
    return value


def _int(section: Dict, key: str, default: int, minimum: int = 0) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValueError(f"config value '{key}' must be an integer >= {minimum}, got {value!r}")
    return value


def _bool(section: Dict, key: str, default: bool) -> bool:
    value = section.get(key, default)
    if not isinstance(value, bool):
        raise ValueError(f"config value '{key}' must be true or false, got {value!r}")
    return value


def parse_config(raw: Optional[Dict], source: Optional[str] = None) -> KLVConfig:
    """
    Build a KLVConfig from a parsed YAML mapping.

    Raises:
        ValueError: If a section or value is malformed
    """
    raw = raw or {}
    if not isinstance(raw, dict):
        raise ValueError("config root must be a mapping")

    limits_raw = _section(raw, 'limits')
    limits = LimitsConfig(
        element_cap=_int(limits_raw, 'element_cap', LimitsConfig.element_cap, 1),
        oracle_max_elements=_int(limits_raw, 'oracle_max_elements',
                                 LimitsConfig.oracle_max_elements),
    )

    compute_raw = _section(raw, 'compute')
    compute = ComputeConfig(
        threads=_int(compute_raw, 'threads', ComputeConfig.threads, 1),
        intern_polys=_bool(compute_raw, 'intern_polys', ComputeConfig.intern_polys),
        extremal_shortcut=_bool(compute_raw, 'extremal_shortcut', ComputeConfig.extremal_shortcut),
        fast_contraction=_bool(compute_raw, 'fast_contraction', ComputeConfig.fast_contraction),
        memory_limit_mb=_int(compute_raw, 'memory_limit_mb', ComputeConfig.memory_limit_mb),
        slice_cache_size=_int(compute_raw, 'slice_cache_size', ComputeConfig.slice_cache_size, 2),
    )

    storage_raw = _section(raw, 'storage')
    fmt = storage_raw.get('format', StorageConfig.format)
    if fmt not in STORAGE_FORMATS:
        raise ValueError(f"storage format must be one of {', '.join(STORAGE_FORMATS)}, got {fmt!r}")
    storage = StorageConfig(
        cache_dir=str(storage_raw.get('cache_dir', StorageConfig.cache_dir)),
        format=fmt,
        use_cache=_bool(storage_raw, 'use_cache', StorageConfig.use_cache),
    )

    return KLVConfig(limits=limits, compute=compute, storage=storage, source=source)


def load_config(config_path: Optional[str] = None) -> KLVConfig:
    """
    Load and validate KLV configuration.

    Resolution order: explicit path, $KLV_CONFIG, ~/.klv/config.yaml, defaults.

    Args:
        config_path: Path to config.yaml

    Returns:
        KLVConfig object

    Raises:
        FileNotFoundError: If an explicitly named config file doesn't exist
        ValueError: If config is invalid
    """
    explicit = config_path or os.environ.get(CONFIG_ENV)
    if explicit:
        path = os.path.expanduser(explicit)
        if not os.path.exists(path):
            raise FileNotFoundError(f"Config not found: {path}")
    else:
        path = os.path.expanduser(USER_CONFIG)
        if not os.path.exists(path):
            return KLVConfig()

    with open(path, 'r') as f:
        try:
            raw = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Config {path} is not valid YAML: {e}") from e

    return parse_config(raw, source=path)
