"""
Circuit layer for the Clifford+T interpolation toolkit.

This module contains:
- core.py: Gate IR, registers, circuit container, ancilla bookkeeping, macro expansion
- gadgets.py: Temporary logical-AND, measurement-based uncompute and Toffoli emitters
- text_format.py: Canonical circuit text format (emit / parse)

"""
