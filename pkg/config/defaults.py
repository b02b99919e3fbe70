#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
defaults.py - Settings loading with environment overrides

Layers, lowest first: schema defaults, QBILERP_* environment variables,
explicit overrides (CLI flags, preset values, dashboard widgets).
"""

from __future__ import annotations

import logging
import os
from typing import Any, Dict, Mapping, Optional

from config.parameter_schema import PARAMETERS, get_defaults, validate_params
from utils.errors import ConfigError
from validation.rules import check_settings

logger = logging.getLogger(__name__)

ENV_PREFIX = "QBILERP_"
ENV_PARAMETERS = ("STATEVECTOR_CAP", "LOG_LEVEL", "MAGIC_MODE")


def _from_environment(environ: Mapping[str, str]) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    errors: Dict[str, str] = {}
    for name in ENV_PARAMETERS:
        raw = environ.get(ENV_PREFIX + name)
        if raw is None or raw == "":
            continue
        try:
            values[name] = PARAMETERS[name].coerce(raw.strip())
        except (TypeError, ValueError):
            errors[name] = f"{ENV_PREFIX}{name}={raw!r} is not a valid {PARAMETERS[name].type.value}"
    if errors:
        raise ConfigError("; ".join(errors.values()))
    if values:
        logger.debug("environment overrides: %s", values)
    return values


def load_settings(overrides: Optional[Mapping[str, Any]] = None,
                  environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    """
    Resolve every parameter to a validated value.

    Args:
        overrides: Explicit values; None entries are ignored
        environ: Environment mapping (os.environ when None)

    Raises:
        ConfigError: listing every failing parameter

    Example:
        >>> load_settings({"N": 2}, environ={"QBILERP_STATEVECTOR_CAP": "12"})["STATEVECTOR_CAP"]
        12
    """
    settings = get_defaults()
    settings.update(_from_environment(os.environ if environ is None else environ))
    for name, value in (overrides or {}).items():
        if value is None:
            continue
        if name in PARAMETERS:
            try:
                value = PARAMETERS[name].coerce(value)
            except (TypeError, ValueError):
                pass  # validate_params reports it
        settings[name] = value

    valid, errors = validate_params(settings)
    if valid:
        valid, errors = check_settings(settings)
    if not valid:
        raise ConfigError("invalid settings: " + "; ".join(f"{k}: {v}" for k, v in sorted(errors.items())))
    return settings
