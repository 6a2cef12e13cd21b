"""Logging utilities."""
import logging
from rich.console import Console
from rich.logging import RichHandler
from ..config import LOG_LEVEL

_configured = False


def configure_logging(level: str = LOG_LEVEL) -> None:
    """
    Install a rich handler on the package logger.

    Output goes to stderr so that JSON written to stdout stays canonical.
    """
    global _configured
    root = logging.getLogger("azbrane")
    root.setLevel(level)
    if _configured:
        return
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Logger under the package namespace, configured on first use."""
    configure_logging()
    return logging.getLogger(name if name.startswith("azbrane") else f"azbrane.{name}")
