"""
Image model for per-pixel circuit simulation.

This module contains:
- neqr.py: NEQR image, basis-index encoding, pixel neighbourhoods
- pgm.py: Plain PGM (P2) load/save

"""
