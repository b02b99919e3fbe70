"""
Test suite for the Clifford+T bilinear interpolation toolkit.

This module contains:
- test_circuit_core.py: Registers, gates, ancilla bookkeeping, macro expansion
- test_gadgets.py: Temporary AND, measurement-based uncompute, Toffoli
- test_text_format.py: Circuit text format parsing and emission
- test_arithmetic.py: Adders, subtractor and multiplier
- test_neqr.py: NEQR images and PGM files
- test_oracle.py: Fixed-point bilinear oracle
- test_bilerp.py: Scale-down and scale-up circuits
- test_simulation.py: Permutation, statevector and equivalence checks
- test_resources.py: Gate tallies and closed-form cost model
- test_reports.py: Run reports and comparison tables
- test_parameters.py: Parameter schema, settings and presets
- test_validation.py: Cross-checks of settings, circuits and reports
- test_integration.py: End-to-end command-line runs
- test_app.py: Dashboard smoke test
"""
