#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_circuit_core.py - Registers, gates, ancilla bookkeeping, macro expansion
"""

import pytest

from circuits.core import (
    Circuit,
    Gate,
    GateKind,
    InitialState,
    MagicMode,
    Register,
    RegisterRole,
    and_network,
    expand_macros,
    new_circuit,
)
from circuits.gadgets import emit_toffoli_macro
from utils.errors import AncillaError, CircuitError, GateError, MagicStateError, RegisterError


# =============================================================================
# REGISTERS
# =============================================================================

def test_registers_take_consecutive_fresh_qubits():
    c = Circuit()
    a = c.alloc_register("a", 2, RegisterRole.COLOR)
    b = c.alloc_register("b", 3, RegisterRole.OUTPUT)
    assert a.qubits == (0, 1)
    assert b.qubits == (2, 3, 4)
    assert c.qubit_count == 5
    assert c.initial_state(0) is InitialState.DATA
    assert c.initial_state(2) is InitialState.ZERO
    assert c.owner(3) == "b"


def test_duplicate_name_and_zero_width_rejected():
    c = Circuit()
    c.alloc_register("a", 1, RegisterRole.COLOR)
    with pytest.raises(RegisterError):
        c.alloc_register("a", 1, RegisterRole.COLOR)
    with pytest.raises(RegisterError):
        c.alloc_register("b", 0, RegisterRole.OUTPUT)


def test_register_view_is_a_bit_window():
    reg = Register("Y", (4, 5, 6, 7), RegisterRole.POSITION_Y)
    view = reg.view(1, 3)
    assert view.qubits == (5, 6)
    assert view.role is RegisterRole.POSITION_Y
    with pytest.raises(RegisterError):
        reg.view(2, 5)


def test_register_repeating_a_qubit_is_rejected():
    with pytest.raises(RegisterError):
        Register("r", (1, 1), RegisterRole.OUTPUT)


# =============================================================================
# ANCILLA LIFECYCLE
# =============================================================================

def test_strict_magic_ancillas_are_never_recycled():
    c = Circuit(magic_mode=MagicMode.INITIAL_STATE)
    first = c.alloc_register("m0", 1, RegisterRole.ANCILLA_MAGIC)
    assert c.initial_state(first[0]) is InitialState.MAGIC_A
    c.release_ancilla(first)
    second = c.alloc_register("m1", 1, RegisterRole.ANCILLA_MAGIC)
    assert second[0] != first[0]
    # a |0> role picks up the released qubit
    zero = c.alloc_register("z", 1, RegisterRole.ANCILLA_ZERO)
    assert zero[0] == first[0]
    assert c.is_known_zero(zero[0])


def test_prepared_magic_ancillas_are_recycled():
    c = Circuit(magic_mode=MagicMode.PREPARED)
    first = c.alloc_register("m0", 2, RegisterRole.ANCILLA_MAGIC)
    assert c.initial_state(first[0]) is InitialState.ZERO
    c.release_ancilla(first)
    second = c.alloc_register("m1", 1, RegisterRole.ANCILLA_MAGIC)
    assert second[0] == first[0]
    assert c.ancilla_high_water == 2


def test_release_rules():
    c = Circuit()
    data = c.alloc_register("d", 1, RegisterRole.COLOR)
    anc = c.alloc_register("a", 1, RegisterRole.ANCILLA_ZERO)
    with pytest.raises(AncillaError):
        c.release_ancilla(data)
    c.release_ancilla(anc)
    with pytest.raises(AncillaError):
        c.release_ancilla(anc)
    assert c.releases[-1].qubits == anc.qubits
    with pytest.raises(GateError):
        c.append(Gate(GateKind.X, (anc[0],)))


def test_qubit_limit_exhausts_the_pool():
    c = Circuit(max_qubits=3)
    c.alloc_register("a", 2, RegisterRole.COLOR)
    with pytest.raises(AncillaError):
        c.alloc_register("b", 2, RegisterRole.ANCILLA_ZERO)


# =============================================================================
# GATES
# =============================================================================

def test_gate_shape_checks():
    with pytest.raises(GateError):
        Gate(GateKind.CNOT, (0,))
    with pytest.raises(GateError):
        Gate(GateKind.CNOT, (1, 1))
    with pytest.raises(GateError):
        Gate(GateKind.MEASURE_X, (0,))
    with pytest.raises(GateError):
        Gate(GateKind.X, (0,), "m0")
    assert str(Gate(GateKind.MEASURE_X, (3,), "m0")) == "MeasureX 3 @m0"


def test_append_checks_range_and_classical_bits():
    c = new_circuit(2)
    with pytest.raises(GateError):
        c.append(Gate(GateKind.X, (2,)))
    with pytest.raises(GateError):
        c.append(Gate(GateKind.CLASSICALLY_CONTROLLED_CZ, (0, 1), "m0"))
    c.append(Gate(GateKind.MEASURE_X, (0,), "m0"))
    c.append(Gate(GateKind.CLASSICALLY_CONTROLLED_CZ, (0, 1), "m0"))
    with pytest.raises(GateError):
        c.append(Gate(GateKind.MEASURE_X, (1,), "m0"))


def test_frozen_circuit_is_read_only():
    c = new_circuit(1).freeze()
    with pytest.raises(CircuitError):
        c.append(Gate(GateKind.X, (0,)))
    copy = c.copy()
    copy.append(Gate(GateKind.X, (0,)))
    assert len(c) == 0 and len(copy) == 1


def test_initial_state_is_fixed_after_first_use():
    c = new_circuit(2)
    c.set_initial_state(1, InitialState.MAGIC_A)
    c.append(Gate(GateKind.X, (0,)))
    with pytest.raises(CircuitError):
        c.set_initial_state(0, InitialState.MAGIC_A)


# =============================================================================
# MACRO EXPANSION
# =============================================================================

def test_primitive_circuit_expands_to_an_equal_copy():
    c = new_circuit(2)
    c.append(Gate(GateKind.H, (0,)))
    c.append(Gate(GateKind.CNOT, (0, 1)))
    out = expand_macros(c)
    assert out.gates == c.gates
    assert out.frozen


def test_strict_expansion_requires_magic_targets():
    c = new_circuit(3)
    c.append(Gate(GateKind.TEMPORARY_AND, (0, 1, 2)))
    with pytest.raises(MagicStateError):
        expand_macros(c)


def test_strict_toffoli_macro_gets_one_magic_scratch_each():
    c = Circuit()
    r = c.alloc_register("r", 3, RegisterRole.COLOR)
    emit_toffoli_macro(c, r[0], r[1], r[2])
    emit_toffoli_macro(c, r[1], r[2], r[0])
    out = expand_macros(c)
    assert out.qubit_count == 5
    assert out.initial_state(3) is InitialState.MAGIC_A
    assert out.is_primitive
    # AND network, copy, measure, corrective CZ
    assert len(out.gates) == 2 * (len(and_network(0, 1, 3)) + 3)
    assert len(out.releases) == 2


def test_prepared_toffoli_macros_share_one_scratch():
    c = Circuit(magic_mode=MagicMode.PREPARED)
    r = c.alloc_register("r", 3, RegisterRole.COLOR)
    emit_toffoli_macro(c, r[0], r[1], r[2])
    emit_toffoli_macro(c, r[0], r[1], r[2])
    out = expand_macros(c)
    assert out.qubit_count == 4
    assert out.initial_state(3) is InitialState.ZERO
    assert [g.kind for g in out.gates[:2]] == [GateKind.H, GateKind.T]
