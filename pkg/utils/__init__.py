"""
Shared utilities for the bilinear interpolation toolkit.

This module contains:
- errors.py: Exception hierarchy used by every package
- logging_setup.py: One-shot logging configuration for the CLI and dashboard

"""
