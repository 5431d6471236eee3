import logging
from collections.abc import Iterator
from contextlib import contextmanager

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def setup_logging(level: int = logging.INFO) -> logging.Logger:
    logging.basicConfig(level=level, format=LOG_FORMAT)
    return logging.getLogger(__name__)


@contextmanager
def silenced(verbose: bool = False) -> Iterator[None]:
    """Disable logging for the duration of the block unless ``verbose`` is set."""
    if not verbose:
        logging.disable(logging.CRITICAL)
    try:
        yield
    finally:
        if not verbose:
            logging.disable(logging.NOTSET)
