import os
from pathlib import Path
from typing import Any, Dict

import yaml

from common.errors import ConfigError

_config_cache = None  # Cache configuration file

THREADS_ENV = "MATROOT_THREADS"


def load_config() -> Dict[str, Any]:  # Load config.yaml from project root directory, cache in memory for global reuse
    global _config_cache
    if _config_cache is None:
        project_root = Path(__file__).resolve().parents[1]
        config_path = project_root / 'config.yaml'
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")
        with open(config_path, 'r', encoding="utf-8") as f:
            _config_cache = yaml.safe_load(f) or {}
    return _config_cache


def get_section(name: str) -> Dict[str, Any]:
    """Return one top-level section of config.yaml."""
    config = load_config()
    if name not in config:
        raise KeyError(f"Section '{name}' missing from config.yaml")
    return config[name]


def get_thread_count() -> int:
    """
    Resolve the worker count for batch parallelism.

    MATROOT_THREADS overrides bench.threads; 0 means one worker per CPU.
    """
    raw = os.environ.get(THREADS_ENV)
    source = THREADS_ENV
    if raw is None:
        raw = get_section("bench").get("threads", 0)
        source = "bench.threads"
    try:
        threads = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{source} must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ConfigError(f"{source} must be >= 0, got {threads}")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


if __name__ == '__main__':
    print(load_config())

"""
Example output:

{'logging': {'level': 'INFO', ...}, 'matcore': {'jacobi_tolerance': 1e-12, ...}, 'forward': {'degree': 11, ...}, ...}
"""
