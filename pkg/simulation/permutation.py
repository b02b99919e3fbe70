#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
permutation.py - Classical bit-level simulation of macro circuits

Every construction in this toolkit permutes computational basis states at
the macro level (X, CNOT, Toffoli, TemporaryAND, UncomputeAND), so a basis
input can be pushed through with bit operations. Inputs are processed as a
(qubits x batch) uint8 matrix so one pass evaluates many inputs at once.
"""

from __future__ import annotations

import logging
from typing import Dict, List

import numpy as np

from circuits.core import Circuit, GateKind
from simulation.models import ClassicalState
from utils.errors import SimulationError, VerificationError

logger = logging.getLogger(__name__)


def run_permutation_batch(circuit: Circuit, bits: np.ndarray, verify: bool = True) -> np.ndarray:
    """
    Evaluate a permutation circuit column-wise.

    Args:
        circuit: Circuit of X / CNOT / Toffoli / TemporaryAND / UncomputeAND gates
        bits: (qubit_count, batch) array of 0/1 values, one input per column
        verify: Check AND targets start at 0, uncompute targets equal a AND b,
            and released qubits are 0

    Returns:
        New (qubit_count, batch) uint8 array of outputs

    Raises:
        SimulationError: non-permutation gate or wrong input shape
        VerificationError: a verification check failed
    """
    state = np.array(bits, dtype=np.uint8, copy=True)
    if state.ndim != 2 or state.shape[0] != circuit.qubit_count:
        raise SimulationError(
            f"expected a ({circuit.qubit_count}, batch) bit matrix, got shape {state.shape}"
        )
    releases: Dict[int, List[int]] = {}
    for release in circuit.releases:
        releases.setdefault(release.position, []).extend(release.qubits)

    for position, gate in enumerate(circuit.gates):
        if verify and position in releases:
            _check_released(state, releases[position], position)
        ops = gate.operands
        kind = gate.kind
        if kind is GateKind.X:
            state[ops[0]] ^= 1
        elif kind is GateKind.CNOT:
            state[ops[1]] ^= state[ops[0]]
        elif kind is GateKind.TOFFOLI:
            state[ops[2]] ^= state[ops[0]] & state[ops[1]]
        elif kind is GateKind.TEMPORARY_AND:
            a, b, t = ops
            if verify and state[t].any():
                raise VerificationError(f"gate {position} {gate}: AND target {t} is not 0")
            state[t] ^= state[a] & state[b]
        elif kind is GateKind.UNCOMPUTE_AND:
            a, b, t = ops
            product = state[a] & state[b]
            if verify and not np.array_equal(state[t], product):
                raise VerificationError(f"gate {position} {gate}: target {t} does not hold {a} AND {b}")
            state[t] ^= product
        else:
            raise SimulationError(f"gate {position} {gate} is not a basis permutation")

    if verify and len(circuit.gates) in releases:
        _check_released(state, releases[len(circuit.gates)], len(circuit.gates))
    return state


def _check_released(state: np.ndarray, qubits: List[int], position: int) -> None:
    dirty = [q for q in qubits if state[q].any()]
    if dirty:
        raise VerificationError(f"released qubit(s) {dirty} are not 0 at gate {position}")


def run_permutation(circuit: Circuit, input_state: ClassicalState, verify: bool = True) -> ClassicalState:
    """
    Single-input permutation run.

    Example:
        >>> from circuits.core import Gate, new_circuit
        >>> c = new_circuit(2)
        >>> c.append(Gate(GateKind.X, (0,)))
        >>> run_permutation(c, ClassicalState.from_ket("00")).to_ket()
        '01'
    """
    if input_state.qubit_count != circuit.qubit_count:
        raise SimulationError(
            f"input assigns {input_state.qubit_count} qubits, circuit has {circuit.qubit_count}"
        )
    column = np.array(input_state.bits, dtype=np.uint8).reshape(-1, 1)
    out = run_permutation_batch(circuit, column, verify)
    return ClassicalState(tuple(int(b) for b in out[:, 0]))


def read_register_batch(bits: np.ndarray, qubits) -> np.ndarray:
    """Integer value of a little-endian qubit group for every column."""
    value = np.zeros(bits.shape[1], dtype=np.int64)
    for i, q in enumerate(qubits):
        value |= bits[q].astype(np.int64) << i
    return value


def write_register_batch(bits: np.ndarray, qubits, values) -> None:
    """Write integer values (one per column) into a little-endian qubit group in place."""
    values = np.asarray(values, dtype=np.int64)
    for i, q in enumerate(qubits):
        bits[q] = (values >> i) & 1
