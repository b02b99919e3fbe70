"""
Configuration module for the bilinear interpolation toolkit.

This module contains:
- parameter_schema.py: Single source of truth for all run parameters
- presets.py: Named YAML presets from scenarios/
- defaults.py: Settings loading with environment overrides

"""
