import logging
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Environment backed configuration shared by the library, campaigns and CLI."""

    HEIGHT = int(os.getenv("APOLAR_HEIGHT", "50"))
    LOG_DIR = os.getenv("APOLAR_LOG_DIR", "logs")
    LOG_LEVEL = os.getenv("APOLAR_LOG_LEVEL", "INFO")
    RESULTS_DIR = os.getenv("APOLAR_RESULTS_DIR", "data")
    MAX_RESAMPLES = int(os.getenv("APOLAR_MAX_RESAMPLES", "50"))

    logger = logging.getLogger(__name__)

    @classmethod
    def height(cls, override: Optional[int] = None) -> int:
        """Sampling height bound for numerators and denominators.

        The environment is read at call time so a test or a shell can change
        ``APOLAR_HEIGHT`` after import.

        Args:
            override (int, optional): Value from an explicit flag; wins over the environment

        Returns:
            int: Height bound, at least 1
        """
        if override is not None:
            value = override
        else:
            value = int(os.getenv("APOLAR_HEIGHT", str(cls.HEIGHT)))
        if value < 1:
            cls.logger.warning(f"Height bound {value} is not positive, using 1")
            return 1
        return value

    @classmethod
    def log_level(cls) -> int:
        """Logging level named by ``APOLAR_LOG_LEVEL``."""
        name = os.getenv("APOLAR_LOG_LEVEL", cls.LOG_LEVEL).upper()
        return getattr(logging, name, logging.INFO)

    @classmethod
    def log_dir(cls) -> str:
        return os.getenv("APOLAR_LOG_DIR", cls.LOG_DIR)

    @classmethod
    def results_dir(cls) -> str:
        return os.getenv("APOLAR_RESULTS_DIR", cls.RESULTS_DIR)

    @classmethod
    def max_resamples(cls) -> int:
        return int(os.getenv("APOLAR_MAX_RESAMPLES", str(cls.MAX_RESAMPLES)))
