#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
errors.py - Exception hierarchy

Every error raised by the library derives from QBilerpError so callers
(CLI, dashboard, tests) can catch one type.
"""

from typing import Optional


class QBilerpError(Exception):
    """Base class for all library errors."""


# =============================================================================
# CIRCUIT CONSTRUCTION
# =============================================================================

class CircuitError(QBilerpError):
    """Base class for circuit construction errors."""


class RegisterError(CircuitError):
    """Bad register request: duplicate name, width, overlap or width mismatch."""


class GateError(CircuitError):
    """Malformed gate or a gate that violates the circuit's bookkeeping."""


class AncillaError(CircuitError):
    """Illegal ancilla release or an exhausted ancilla pool."""


class MagicStateError(CircuitError):
    """A TemporaryAND target is not an unused |A> qubit in strict mode."""


class CircuitParseError(CircuitError):
    """Syntax or semantic error in the circuit text format."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# =============================================================================
# SIMULATION AND VERIFICATION
# =============================================================================

class SimulationError(QBilerpError):
    """Simulator cannot run the circuit (cap, drift, unsupported gate)."""


class VerificationError(QBilerpError):
    """A checked property failed (ancilla restoration, operand preservation, agreement)."""


# =============================================================================
# DOMAIN INPUTS
# =============================================================================

class ImageFormatError(QBilerpError):
    """PGM file or NEQR image constraint violated."""


class SpecError(QBilerpError):
    """Interpolation spec does not fit the requested construction."""


class FormulaDomainError(QBilerpError):
    """Closed-form cost formula evaluated outside its domain."""


class ConfigError(QBilerpError):
    """Invalid run parameters or unknown preset."""
