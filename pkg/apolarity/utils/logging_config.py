import logging
import os
import sys
from typing import Optional

from apolarity.utils.settings import Settings


def setup_logging(log_file: str, level: Optional[int] = None) -> logging.Logger:
    """Set up logging configuration for a campaign or command.

    Args:
        log_file (str): Name of the log file (without extension), also the logger name
        level (int, optional): Logging level (default: from ``APOLAR_LOG_LEVEL``)

    Returns:
        logging.Logger: Configured logger instance
    """
    logger = logging.getLogger(log_file)
    if level is None:
        level = Settings.log_level()

    # Only add handlers if the logger doesn't already have them
    if not logger.handlers:
        log_dir = Settings.log_dir()
        os.makedirs(log_dir, exist_ok=True)

        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

        file_handler = logging.FileHandler(os.path.join(log_dir, f"{log_file}.log"), mode="w")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

        # stdout carries the reports
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    logger.setLevel(level)
    return logger
