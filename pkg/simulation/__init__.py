"""
Simulation module for Clifford+T circuits.

This module contains:
- models.py: Classical inputs, branch policies and simulation outcomes
- statevector.py: Dense statevector simulation with X-basis measurement
- permutation.py: Batched classical-bit simulation of macro circuits
- equivalence.py: Unitary and permutation equivalence checks

"""
