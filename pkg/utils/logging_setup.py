#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
logging_setup.py - Logging configuration shared by the CLI and the dashboard
"""

import logging
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Union[str, int] = "WARNING") -> None:
    """
    Install a single stderr handler on the root logger.

    Calling it again only changes the level, so repeated Streamlit reruns do
    not stack handlers.

    Args:
        level: Level name ("DEBUG", "INFO", ...) or numeric level
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger()
    if not any(getattr(h, "_qbilerp", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._qbilerp = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    root.setLevel(level)
