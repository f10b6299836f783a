import logging
import os
from logging.config import dictConfig

logging_configuration = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "time_severity_message": {
            "format": "[{asctime}] - [{levelname}]: {message}",
            "style": "{",
        },
        "severity_name_message": {
            "format": "[{levelname}] [{name}]: {message}",
            "style": "{",
        },
        "severity_message": {"format": "[{levelname}]: {message}", "style": "{"},
        "message_format": {"format": "{message}", "style": "{"},
    },
    "handlers": {
        "terminal": {
            "class": "logging.StreamHandler",
            "formatter": "severity_message",
            "stream": "ext://sys.stderr",
            "level": "DEBUG",
        },
    },
    "loggers": {"scenval": {"level": "WARNING", "handlers": ["terminal"], "propagate": False}},
}


def configure_logging(level="WARNING", filename=None):
    """Re-apply the logging configuration with a new level and an optional log file.

    Parameters
    ----------
    level : str or int
        level of the ``scenval`` logger
    filename : str, optional
        when given, records are also written (mode "w") to this file with timestamps

    """
    if isinstance(level, int):
        level = logging.getLevelName(level)

    config = {**logging_configuration, "handlers": dict(logging_configuration["handlers"])}
    handlers = ["terminal"]
    if filename is not None:
        config["handlers"]["file_log"] = {
            "class": "logging.FileHandler",
            "mode": "w",
            "formatter": "time_severity_message",
            "level": "DEBUG",
            "filename": os.path.abspath(filename),
        }
        handlers.append("file_log")

    config["loggers"] = {"scenval": {"level": level, "handlers": handlers, "propagate": False}}
    dictConfig(config)
