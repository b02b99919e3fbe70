#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
equivalence.py - Check a circuit against a reference unitary or permutation

Ports are the qubits the reference acts on: port j is bit j of the reference
index. Non-port qubits start in their declared initial state and must end in
|0>; any amplitude left on them counts as deviation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from circuits.core import Circuit, expand_macros
from simulation.models import BranchPolicy, ClassicalState, states_from_ints
from simulation.permutation import run_permutation_batch
from simulation.statevector import DEFAULT_STATEVECTOR_CAP, run_statevector
from utils.errors import SimulationError, VerificationError

logger = logging.getLogger(__name__)

MAX_UNITARY_PORTS = 12
MAX_REPORTED_FAILURES = 10

Reference = Union[np.ndarray, Sequence[int], Callable[[int], int]]


@dataclass
class EquivalenceVerdict:
    """
    Result of assert_equivalence.

    Attributes:
        passed: True if every column matched within tolerance
        mode: "unitary" or "permutation"
        max_deviation: Largest amplitude deviation (unitary) or 1.0 per mismatch
        failures: Basis inputs (port indices) that failed, first few only
        message: One-line summary
    """
    passed: bool
    mode: str
    max_deviation: float
    failures: List[int] = field(default_factory=list)
    message: str = ""

    def raise_if_failed(self) -> "EquivalenceVerdict":
        if not self.passed:
            raise VerificationError(self.message)
        return self

    def __bool__(self) -> bool:
        return self.passed


def default_ports(circuit: Circuit) -> List[int]:
    """Every qubit never allocated to an ancilla register, ascending."""
    ancillas = circuit.ancilla_qubits
    return [q for q in range(circuit.qubit_count) if q not in ancillas]


def assert_equivalence(
    circuit: Circuit,
    reference: Reference,
    tolerance: float = 1e-10,
    ports: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_STATEVECTOR_CAP,
) -> EquivalenceVerdict:
    """
    Compare a circuit with a reference on every basis input of its ports.

    A 2-D array selects unitary mode: the expanded circuit is simulated with
    every measurement branch, and each branch's port amplitudes must equal the
    reference column up to one global phase shared by all columns. Anything
    else (a permutation table or a function of the port index) selects
    permutation mode, compared exhaustively.

    Raises:
        SimulationError: reference dimension does not match the ports, or too
            many ports for unitary mode
    """
    ports = list(default_ports(circuit) if ports is None else ports)
    if isinstance(reference, np.ndarray) and reference.ndim == 2:
        return _unitary_verdict(circuit, reference, ports, tolerance, cap)
    table = _permutation_table(reference, len(ports))
    return _permutation_verdict(circuit, table, ports, cap)


# =============================================================================
# UNITARY MODE
# =============================================================================

def _unitary_verdict(circuit: Circuit, reference: np.ndarray, ports: List[int],
                     tolerance: float, cap: int) -> EquivalenceVerdict:
    p = len(ports)
    if p > MAX_UNITARY_PORTS:
        raise SimulationError(f"unitary mode supports at most {MAX_UNITARY_PORTS} ports, got {p}")
    dim = 1 << p
    if reference.shape != (dim, dim):
        raise SimulationError(f"reference is {reference.shape}, ports need ({dim}, {dim})")

    expanded = expand_macros(circuit)
    k = expanded.qubit_count
    port_index = _port_gather(ports, k)
    on_ports = port_index >= 0

    phase = None
    worst = 0.0
    failures: List[int] = []
    for column in range(dim):
        bits = [0] * k
        for j, q in enumerate(ports):
            bits[q] = (column >> j) & 1
        outcomes = run_statevector(expanded, ClassicalState(tuple(bits)), BranchPolicy.enumerate_all(),
                                   cap=cap, verify=False)
        expected = reference[:, column]
        for outcome in outcomes:
            amplitudes = outcome.state
            actual = np.zeros(dim, dtype=np.complex128)
            actual[port_index[on_ports]] = amplitudes[on_ports]
            residue = float(np.sqrt(np.sum(np.abs(amplitudes[~on_ports]) ** 2)))
            if phase is None:
                anchor = int(np.argmax(np.abs(expected)))
                phase = actual[anchor] / expected[anchor] if abs(actual[anchor]) > 1e-12 else 1.0
                phase = phase / abs(phase) if abs(phase) > 1e-12 else 1.0
            deviation = max(float(np.max(np.abs(actual - phase * expected))), residue)
            worst = max(worst, deviation)
            if deviation > tolerance and column not in failures:
                failures.append(column)

    passed = not failures
    message = (f"unitary equivalence {'passed' if passed else 'FAILED'}: max deviation "
               f"{worst:.3e} (tolerance {tolerance:g}) over {dim} columns")
    if failures:
        message += f"; failing inputs {failures[:MAX_REPORTED_FAILURES]}"
    logger.debug(message)
    return EquivalenceVerdict(passed, "unitary", worst, failures[:MAX_REPORTED_FAILURES], message)


def _port_gather(ports: List[int], k: int) -> np.ndarray:
    """For every full basis index: its port index if all non-port bits are 0, else -1."""
    full = np.arange(1 << k, dtype=np.int64)
    port_mask = sum(1 << q for q in ports)
    port_value = np.zeros_like(full)
    for j, q in enumerate(ports):
        port_value |= ((full >> q) & 1) << j
    return np.where(full & ~port_mask, -1, port_value)


# =============================================================================
# PERMUTATION MODE
# =============================================================================

def _permutation_table(reference: Reference, port_count: int) -> np.ndarray:
    dim = 1 << port_count
    if callable(reference):
        table = np.array([reference(x) for x in range(dim)], dtype=np.int64)
    else:
        table = np.asarray(reference, dtype=np.int64).reshape(-1)
    if table.size != dim:
        raise SimulationError(f"permutation reference has {table.size} entries, ports need {dim}")
    return table


def _permutation_verdict(circuit: Circuit, table: np.ndarray, ports: List[int], cap: int) -> EquivalenceVerdict:
    dim = table.size
    k = circuit.qubit_count
    inputs = np.zeros((k, dim), dtype=np.uint8)
    port_bits = states_from_ints(range(dim), len(ports))
    for j, q in enumerate(ports):
        inputs[q] = port_bits[j]

    if all(g.kind.is_permutation for g in circuit.gates):
        outputs = run_permutation_batch(circuit, inputs)
        final = outputs
    else:
        final = _basis_outputs_by_statevector(circuit, inputs, cap)

    got = np.zeros(dim, dtype=np.int64)
    for j, q in enumerate(ports):
        got |= final[q].astype(np.int64) << j
    non_ports = [q for q in range(final.shape[0]) if q not in set(ports)]
    dirty = final[non_ports].any(axis=0) if non_ports else np.zeros(dim, dtype=bool)
    bad = np.flatnonzero((got != table) | dirty)

    passed = bad.size == 0
    message = (f"permutation equivalence {'passed' if passed else 'FAILED'} over {dim} inputs")
    if not passed:
        x = int(bad[0])
        message += f"; first mismatch input {x}: expected {int(table[x])}, got {int(got[x])}"
        if dirty[x]:
            message += " (non-port qubits left set)"
    logger.debug(message)
    return EquivalenceVerdict(passed, "permutation", float(bad.size > 0),
                              [int(x) for x in bad[:MAX_REPORTED_FAILURES]], message)


def _basis_outputs_by_statevector(circuit: Circuit, inputs: np.ndarray, cap: int) -> np.ndarray:
    """Run each input column through the statevector simulator; every branch must agree."""
    expanded = expand_macros(circuit)
    k = expanded.qubit_count
    outputs = np.zeros((k, inputs.shape[1]), dtype=np.uint8)
    for column in range(inputs.shape[1]):
        bits = tuple(int(b) for b in inputs[:, column]) + (0,) * (k - inputs.shape[0])
        outcomes = run_statevector(expanded, ClassicalState(bits), cap=cap)
        indices = {o.basis_index() for o in outcomes}
        if len(indices) != 1:
            raise VerificationError(f"measurement branches disagree on input column {column}: {sorted(indices)}")
        index = indices.pop()
        outputs[:, column] = [(index >> q) & 1 for q in range(k)]
    return outputs
