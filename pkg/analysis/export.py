#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
export.py - JSON and text export of reports and comparison tables
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterable, List, Union

from pydantic import BaseModel

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def to_json(payload: Union[BaseModel, Iterable[BaseModel], dict]) -> str:
    """Indented JSON for a model, a list of models or a plain dict."""
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2)
    if isinstance(payload, dict):
        return json.dumps(payload, indent=2, default=str)
    items: List[dict] = [item.model_dump(mode="json") for item in payload]
    return json.dumps(items, indent=2)


def write_json(payload: Union[BaseModel, Iterable[BaseModel], dict], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(payload) + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path


def write_text(text: str, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path
