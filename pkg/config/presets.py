#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
presets.py - Named parameter bundles stored as YAML in scenarios/

A preset file looks like:

    description: Verify scale-down of a 4x4 image
    parameters:
      MODE: down
      M: 2
      N: 1
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from config.parameter_schema import validate_params
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

PRESET_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def list_presets(directory: Optional[Union[str, Path]] = None) -> List[str]:
    directory = Path(directory) if directory is not None else PRESET_DIR
    return sorted(p.stem for p in directory.glob("*.yaml"))


def load_preset(name: str, directory: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Parameter values of one preset, validated against the schema.

    Raises:
        ConfigError: unknown preset, malformed YAML or invalid values
    """
    directory = Path(directory) if directory is not None else PRESET_DIR
    path = directory / f"{name}.yaml"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(list_presets(directory)) or 'none'}")
    try:
        document = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"preset {name!r} is not valid YAML: {exc}") from None

    parameters = document.get("parameters") if isinstance(document, dict) else None
    if not isinstance(parameters, dict):
        raise ConfigError(f"preset {name!r} has no 'parameters' mapping")
    valid, errors = validate_params(parameters)
    if not valid:
        raise ConfigError(f"preset {name!r}: " + "; ".join(f"{k}: {v}" for k, v in sorted(errors.items())))
    logger.debug("loaded preset %s: %s", name, parameters)
    return dict(parameters)


def preset_description(name: str, directory: Optional[Union[str, Path]] = None) -> str:
    directory = Path(directory) if directory is not None else PRESET_DIR
    try:
        document = yaml.safe_load((directory / f"{name}.yaml").read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError):
        return ""
    return str(document.get("description", "")) if isinstance(document, dict) else ""
