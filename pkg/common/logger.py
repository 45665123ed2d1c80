import logging
import sys

from common.config_loader import load_config

_configured = False

BANNER_WIDTH = 33


def _configure_root():
    global _configured
    if _configured:
        return
    section = load_config().get("logging", {})
    handler = logging.StreamHandler(sys.stderr)  # stdout is reserved for CSV
    handler.setFormatter(logging.Formatter(section.get("format", "%(levelname)s %(name)s: %(message)s")))
    root = logging.getLogger("matroot")
    root.addHandler(handler)
    root.setLevel(section.get("level", "INFO"))
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Logger under the 'matroot' hierarchy, configured once from config.yaml."""
    _configure_root()
    return logging.getLogger(f"matroot.{name}")


def banner(agent_name: str) -> str:
    """Agent banner line, e.g. ====[BenchAgent]====."""
    rule = "=" * BANNER_WIDTH
    return f"{rule}[{agent_name}]{rule}"
