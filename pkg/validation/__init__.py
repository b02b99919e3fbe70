"""
Validation module for the bilinear interpolation toolkit.

This module contains:
- rules.py: Settings, circuit and report cross-checks

"""
