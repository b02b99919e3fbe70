"""
Reversible arithmetic blocks built from temporary-AND carry ladders.

This module contains:
- blocks.py: Adder, conditional adder, subtractor and the ArithmeticBlock record
- multiplier.py: Shift-and-add multiplier over conditional adders

"""
