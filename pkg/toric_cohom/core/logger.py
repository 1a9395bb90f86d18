import logging
import sys
from pathlib import Path
from typing import Optional

from tqdm.auto import tqdm


class TqdmHandler(logging.StreamHandler):
    def emit(self, record):
        try:
            msg = self.format(record)
            # Use tqdm.write to avoid breaking progress bars; stdout stays clean for --json
            tqdm.write(msg, file=sys.stderr)
        except Exception:
            super().emit(record)


def setup_logger(logfile: Optional[str], level: str = "INFO"):
    logger = logging.getLogger("toric_cohom")
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    logger.handlers.clear()
    logger.propagate = False
    fmt = logging.Formatter("%(asctime)s %(levelname)s [%(name)s] %(message)s")
    if logfile:
        Path(logfile).parent.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(logfile)
        fh.setFormatter(fmt)
        logger.addHandler(fh)
    sh = TqdmHandler(sys.stderr)
    sh.setFormatter(fmt)
    logger.addHandler(sh)
    return logger
