import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from config.config import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s'

# Handlers installed by setup_logging, so repeated calls (tests, CLI runs) don't stack them
_installed_handlers = []

def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Configures logging for the CLI and library.

    Results go to stdout, so the console handler writes to stderr.
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    numeric_level = getattr(logging, level_name, None)
    if not isinstance(numeric_level, int):
        raise ValueError(f'Invalid log level: {level_name}')

    logger = logging.getLogger()
    logger.setLevel(numeric_level)
    for handler in _installed_handlers:
        logger.removeHandler(handler)
        handler.close()
    _installed_handlers.clear()

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
    _installed_handlers.append(console_handler)

    log_file_path = log_file or settings.LOG_FILE_PATH
    if log_file_path:
        log_dir = os.path.dirname(log_file_path)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file_path,
            maxBytes=settings.LOG_FILE_MAX_BYTES,
            backupCount=settings.LOG_FILE_BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
        _installed_handlers.append(file_handler)

    logger.debug("Logging configured: Level=%s, Path=%s", level_name, log_file_path)

def level_for_verbosity(verbosity: int) -> str:
    """Maps -v counts onto log level names."""
    if verbosity >= 2:
        return "DEBUG"
    if verbosity == 1:
        return "INFO"
    return settings.LOG_LEVEL
