"""
Analysis module for the bilinear interpolation toolkit.

This module contains:
- resources.py: Gate tallies, block census and per-block bounds
- cost_model.py: Closed-form T-count formulas (proposed and prior designs)
- reports.py: RunReport and the formula comparison table
- export.py: JSON and text export

"""
