import logging
import sys

LOG_FORMAT = "[%(asctime)s] [%(levelname)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def configure_logging(level: str = "WARNING") -> None:
    """Attach a single stderr handler to the package logger."""
    logger = logging.getLogger("translated_tori")
    logger.setLevel(level.upper())
    if not any(getattr(h, "_tori", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        handler._tori = True
        logger.addHandler(handler)
