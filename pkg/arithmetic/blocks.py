#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
blocks.py - Adder, conditional adder and subtractor over qubit registers

All arithmetic is unsigned and modulo 2^n unless a carry-out qubit is given.
Registers are little-endian (position 0 = least-significant bit).

The adder is the temporary-AND ripple-carry ladder: one AND per carry,
uncomputed by measurement on the way back, so an n-bit add costs 4(n-1)
T gates (4n with a carry-out).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence, Tuple

from circuits.core import Circuit, Gate, GateKind, QubitId, Register, RegisterRole
from circuits.gadgets import emit_temporary_and, emit_uncompute_and
from utils.errors import RegisterError

logger = logging.getLogger(__name__)


class BlockKind(Enum):
    ADDER = "adder"
    CONDITIONAL_ADDER = "conditional_adder"
    SUBTRACTOR = "subtractor"
    MULTIPLIER = "multiplier"
    DIVIDER = "divider"


@dataclass(frozen=True)
class ArithmeticBlock:
    """
    Metadata for one arithmetic block placed in a circuit.

    Attributes:
        kind: Block kind
        operand_width: Widest operand, in bits
        input_registers: Operand registers (may be views)
        output_register: Register receiving the result
        gate_span: Half-open gate index range [start, stop)
        operand_widths: Widths as the cost formulas take them; a carry-out
            qubit widens the target operand by one
    """
    kind: BlockKind
    operand_width: int
    input_registers: Tuple[Register, ...]
    output_register: Optional[Register]
    gate_span: Tuple[int, int]
    operand_widths: Tuple[int, ...] = ()

    def remapped(self, index_map: Sequence[int]) -> "ArithmeticBlock":
        """Same block with its gate span translated through an old->new index map."""
        start, stop = self.gate_span
        return replace(self, gate_span=(index_map[start], index_map[stop]))


def _check_disjoint(*registers: Register) -> None:
    seen = {}
    for reg in registers:
        for q in reg.qubits:
            if q in seen:
                raise RegisterError(f"registers '{seen[q]}' and '{reg.name}' overlap on qubit {q}")
            seen[q] = reg.name


def _check_same_width(a: Register, b: Register) -> int:
    if a.width != b.width:
        raise RegisterError(f"width mismatch: '{a.name}' has {a.width} bits, '{b.name}' has {b.width}")
    return a.width


def _record(circuit: Circuit, kind: BlockKind, start: int, inputs: Tuple[Register, ...],
            output: Register, widths: Tuple[int, ...]) -> ArithmeticBlock:
    block = ArithmeticBlock(
        kind=kind,
        operand_width=max(widths),
        input_registers=inputs,
        output_register=output,
        gate_span=(start, len(circuit.gates)),
        operand_widths=widths,
    )
    circuit.blocks.append(block)
    logger.debug("%s widths=%s span=%s", kind.value, widths, block.gate_span)
    return block


# =============================================================================
# UNRECORDED BUILDING BLOCKS
# =============================================================================

def ripple_add(circuit: Circuit, a: Sequence[QubitId], b: Sequence[QubitId],
               carry_out: Optional[QubitId] = None) -> None:
    """
    b := b + a over len(a) bits; carry_out ^= final carry if given.

    Carry qubits c[1..k] are magic ancillas, k = n - 1 without a carry-out
    and n with one. On the way up bit i holds a_i ^ c_i and b_i ^ c_i while
    c[i+1] = AND(a_i ^ c_i, b_i ^ c_i) ^ c_i = MAJ(a_i, b_i, c_i).
    """
    n = len(a)
    k = n if carry_out is not None else n - 1
    if k == 0:
        circuit.append(Gate(GateKind.CNOT, (a[0], b[0])))
        return

    carries = circuit.alloc_register(circuit.fresh_name("carry"), k, RegisterRole.ANCILLA_MAGIC)
    c = (None, *carries.qubits)

    for i in range(k):
        if i > 0:
            circuit.append(Gate(GateKind.CNOT, (c[i], a[i])))
            circuit.append(Gate(GateKind.CNOT, (c[i], b[i])))
        emit_temporary_and(circuit, a[i], b[i], c[i + 1])
        if i > 0:
            circuit.append(Gate(GateKind.CNOT, (c[i], c[i + 1])))

    if carry_out is not None:
        circuit.append(Gate(GateKind.CNOT, (c[n], carry_out)))
    else:
        top = n - 1
        circuit.append(Gate(GateKind.CNOT, (c[top], b[top])))
        circuit.append(Gate(GateKind.CNOT, (a[top], b[top])))

    for i in reversed(range(k)):
        if i > 0:
            circuit.append(Gate(GateKind.CNOT, (c[i], c[i + 1])))
        emit_uncompute_and(circuit, a[i], b[i], c[i + 1])
        if i > 0:
            circuit.append(Gate(GateKind.CNOT, (c[i], a[i])))
        circuit.append(Gate(GateKind.CNOT, (a[i], b[i])))

    circuit.release_ancilla(carries)


def conditional_add(circuit: Circuit, ctrl: QubitId, a: Sequence[QubitId], b: Sequence[QubitId],
                    carry_out: Optional[QubitId] = None) -> None:
    """b := b + ctrl*a; the masked addend ctrl AND a_i lives in temporary ANDs."""
    masked = circuit.alloc_register(circuit.fresh_name("mask"), len(a), RegisterRole.ANCILLA_MAGIC)
    for a_i, m_i in zip(a, masked):
        emit_temporary_and(circuit, ctrl, a_i, m_i)
    ripple_add(circuit, masked.qubits, b, carry_out)
    for a_i, m_i in zip(a, masked):
        emit_uncompute_and(circuit, ctrl, a_i, m_i)
    circuit.release_ancilla(masked)


# =============================================================================
# PUBLIC BUILDERS
# =============================================================================

def build_adder(circuit: Circuit, A: Register, B: Register,
                carry_out: Optional[QubitId] = None) -> ArithmeticBlock:
    """
    B := (B + A) mod 2^n, A unchanged.

    Args:
        circuit: Circuit under construction
        A: Addend register
        B: Target register
        carry_out: Optional |0> qubit receiving the carry (costs 4 more T)

    Returns:
        ArithmeticBlock recorded in circuit.blocks

    Example:
        >>> c = Circuit()
        >>> A = c.alloc_register("A", 3, RegisterRole.COLOR)
        >>> B = c.alloc_register("B", 3, RegisterRole.OUTPUT)
        >>> build_adder(c, A, B).kind.value
        'adder'
    """
    n = _check_same_width(A, B)
    _check_disjoint(A, B)
    if carry_out is not None and carry_out in (*A.qubits, *B.qubits):
        raise RegisterError(f"carry-out qubit {carry_out} aliases an operand")
    start = len(circuit.gates)
    ripple_add(circuit, A.qubits, B.qubits, carry_out)
    widths = (n, n + 1) if carry_out is not None else (n, n)
    return _record(circuit, BlockKind.ADDER, start, (A, B), B, widths)


def build_conditional_adder(circuit: Circuit, ctrl: QubitId, A: Register, B: Register,
                            carry_out: Optional[QubitId] = None) -> ArithmeticBlock:
    """
    If ctrl: B := (B + A) mod 2^n; otherwise B is unchanged. ctrl and A are preserved.

    Measured T-count is 8n - 4: n ANDs for ctrl*A plus the 4(n-1) ladder.
    """
    n = _check_same_width(A, B)
    _check_disjoint(A, B)
    if ctrl in A.qubits or ctrl in B.qubits:
        raise RegisterError(f"control qubit {ctrl} aliases an operand")
    if carry_out is not None and carry_out in (ctrl, *A.qubits, *B.qubits):
        raise RegisterError(f"carry-out qubit {carry_out} aliases an operand")
    start = len(circuit.gates)
    conditional_add(circuit, ctrl, A.qubits, B.qubits, carry_out)
    widths = (n, n + 1) if carry_out is not None else (n, n)
    return _record(circuit, BlockKind.CONDITIONAL_ADDER, start, (A, B), B, widths)


def build_subtractor(circuit: Circuit, A: Register, B: Register) -> ArithmeticBlock:
    """
    B := (B - A) mod 2^n using B - A = NOT(NOT(B) + A).

    Measured T-count 4n - 4; A unchanged.
    """
    n = _check_same_width(A, B)
    _check_disjoint(A, B)
    start = len(circuit.gates)
    for q in B:
        circuit.append(Gate(GateKind.X, (q,)))
    ripple_add(circuit, A.qubits, B.qubits)
    for q in B:
        circuit.append(Gate(GateKind.X, (q,)))
    return _record(circuit, BlockKind.SUBTRACTOR, start, (A, B), B, (n, n))
