"""
Logging configuration module.
"""

# imports
import logging
import sys
from typing import Optional
from pathlib import Path

# app imports
from inamc_app.config import AppConfig, get_config, PROJECT_PATH

# package logger that module loggers propagate to
APP_LOGGER_NAME = __name__.split(".")[0]

# console output
CONSOLE_HANDLER_NAME = "inamc-console"
CONSOLE_FORMAT = "%(levelname)s %(name)s: %(message)s"


def enable_console_logging(level: str = "INFO") -> logging.Handler:
    """
    Mirror the package's log records to stderr.

    The handler sits on the package logger, so every module logger reaches it
    once; module loggers above the requested level are lowered to it.

    Args:
        level (str): The console log level, e.g., DEBUG, INFO.

    Returns:
        logging.Handler: The console handler.
    """
    numeric_level = getattr(logging, level.upper())
    app_logger = logging.getLogger(APP_LOGGER_NAME)

    handler = next(
        (h for h in app_logger.handlers if h.get_name() == CONSOLE_HANDLER_NAME), None
    )
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.set_name(CONSOLE_HANDLER_NAME)
        handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        app_logger.addHandler(handler)
    else:
        # follow a replaced sys.stderr
        handler.setStream(sys.stderr)
    handler.setLevel(numeric_level)

    if app_logger.level == logging.NOTSET or app_logger.level > numeric_level:
        app_logger.setLevel(numeric_level)
    for name, logger in logging.Logger.manager.loggerDict.items():
        if not name.startswith(APP_LOGGER_NAME + "."):
            continue
        if isinstance(logger, logging.Logger) and logger.level > numeric_level:
            logger.setLevel(numeric_level)
    return handler


def create_logger(
    name: str,
    level: Optional[str] = None,
    format_string: Optional[str] = None,
    app_config: Optional[AppConfig] = None,
) -> logging.Logger:
    """
    Create a logger with the given name and configuration.

    Records go to the configured log file, and also to stderr when
    log_console is set.

    Args:
        name (str): The logger name
        level (Optional[str]): The log level, e.g., DEBUG, INFO. If None, use app_config
        format_string (Optional[str]): Custom format string. If None, use default
        app_config (Optional[AppConfig]): App configuration. If None, load from file

    Returns:
        logging.Logger: Configured logger instance
    """
    # Get app config if not provided
    if app_config is None:
        app_config = get_config()

    # Use app config log level if not specified
    if level is None:
        level = app_config.log_level

    # Create logger
    logger = logging.getLogger(name)

    # Set level
    logger.setLevel(getattr(logging, level.upper()))

    # Remove existing handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    # log files live under the project root unless given absolutely
    try:
        log_file_path = Path(app_config.log_file)
        if not log_file_path.is_absolute():
            log_file_path = PROJECT_PATH / log_file_path
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
    except Exception as e:
        print(f"Error creating log file: {e}")
        log_file_path = Path("inamc.log")

    # get handler with absolute path to log file
    handler = logging.FileHandler(log_file_path)
    handler.setLevel(getattr(logging, level.upper()))

    # Set format
    if format_string is None:
        format_string = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    formatter = logging.Formatter(format_string)
    handler.setFormatter(formatter)

    # Add handler to logger
    logger.addHandler(handler)

    if app_config.log_console:
        enable_console_logging(level)

    return logger


# Create the default app logger
LOGGER = create_logger(__name__)
