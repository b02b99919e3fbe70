#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_simulation.py - Permutation, statevector and equivalence checks
"""

import numpy as np
import pytest

from circuits.core import Circuit, Gate, GateKind, MagicMode, RegisterRole, new_circuit
from circuits.gadgets import emit_temporary_and, emit_uncompute_and
from cli import build_named_circuit
from simulation.equivalence import assert_equivalence, default_ports
from simulation.models import BranchPolicy, ClassicalState, states_from_ints
from simulation.permutation import run_permutation, run_permutation_batch
from simulation.statevector import run_statevector
from utils.errors import SimulationError, VerificationError


# =============================================================================
# MODELS
# =============================================================================

def test_kets_put_qubit_zero_on_the_right():
    state = ClassicalState.from_ket("|01>")
    assert state.bits == (1, 0)
    assert state.to_ket() == "01"
    assert state.to_int() == 1
    assert ClassicalState.from_int(6, 3).bits == (0, 1, 1)
    with pytest.raises(SimulationError):
        ClassicalState.from_ket("012")
    with pytest.raises(SimulationError):
        ClassicalState.from_int(8, 3)


def test_register_values_are_little_endian():
    c = Circuit()
    a = c.alloc_register("a", 2, RegisterRole.COLOR)
    c.alloc_register("b", 2, RegisterRole.COLOR)
    state = ClassicalState.from_registers(c, {"a": 2, "b": 3})
    assert state.bits == (0, 1, 1, 1)
    assert state.read(a) == 2
    with pytest.raises(SimulationError):
        ClassicalState.from_registers(c, {"a": 4})


def test_branch_policy_kinds():
    assert BranchPolicy.enumerate_all().enumerates
    assert str(BranchPolicy.sample(3)) == "sample(3)"
    with pytest.raises(SimulationError):
        BranchPolicy("guess")


def test_states_from_ints_is_one_column_per_value():
    bits = states_from_ints([0, 5], 3)
    assert bits.shape == (3, 2)
    assert bits[:, 1].tolist() == [1, 0, 1]


# =============================================================================
# PERMUTATION BACKEND
# =============================================================================

def test_single_input_permutation_run():
    c = new_circuit(3)
    c.append(Gate(GateKind.X, (0,)))
    c.append(Gate(GateKind.CNOT, (0, 2)))
    c.append(Gate(GateKind.TOFFOLI, (0, 2, 1)))
    assert run_permutation(c, ClassicalState.from_ket("000")).to_ket() == "111"


def test_permutation_rejects_non_permutation_gates():
    c = new_circuit(1)
    c.append(Gate(GateKind.H, (0,)))
    with pytest.raises(SimulationError):
        run_permutation(c, ClassicalState.zeros(1))
    with pytest.raises(SimulationError):
        run_permutation_batch(c, np.zeros((1, 2), dtype=np.uint8))


def test_permutation_verifies_and_targets():
    c = new_circuit(3)
    c.append(Gate(GateKind.TEMPORARY_AND, (0, 1, 2)))
    with pytest.raises(VerificationError):
        run_permutation(c, ClassicalState.from_ket("100"))
    # unchecked run just XORs
    assert run_permutation(c, ClassicalState.from_ket("111"), verify=False).to_ket() == "011"


def test_permutation_verifies_released_qubits():
    c = Circuit()
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    anc = c.alloc_register("anc", 1, RegisterRole.ANCILLA_ZERO)
    c.append(Gate(GateKind.CNOT, (a[0], anc[0])))
    c.release_ancilla(anc)
    assert run_permutation(c, ClassicalState.from_ket("00")).to_ket() == "00"
    with pytest.raises(VerificationError):
        run_permutation(c, ClassicalState.from_ket("01"))


# =============================================================================
# STATEVECTOR BACKEND
# =============================================================================

def test_statevector_cap_and_magic_inputs():
    circuit = build_named_circuit("adder", 4)
    with pytest.raises(SimulationError):
        run_statevector(circuit, ClassicalState.zeros(circuit.qubit_count), cap=8)
    and_circuit = build_named_circuit("and")
    with pytest.raises(SimulationError):
        run_statevector(and_circuit, ClassicalState.from_ket("100"))


def test_superposition_outcome_reports_amplitudes():
    c = new_circuit(1)
    c.append(Gate(GateKind.H, (0,)))
    (outcome,) = run_statevector(c, ClassicalState.zeros(1))
    assert np.allclose(np.abs(outcome.state) ** 2, [0.5, 0.5])
    with pytest.raises(SimulationError):
        outcome.basis_index()
    record = outcome.to_dict()
    assert set(record["amplitudes"]) == {"0", "1"}


def test_branch_policies():
    c = new_circuit(2)
    c.append(Gate(GateKind.MEASURE_X, (0,), "m0"))
    c.append(Gate(GateKind.CLASSICALLY_CONTROLLED_CZ, (0, 1), "m0"))
    every = run_statevector(c, ClassicalState.zeros(2))
    assert sorted(o.classical_bits["m0"] for o in every) == [0, 1]
    assert sum(o.probability for o in every) == pytest.approx(1.0)

    first = run_statevector(c, ClassicalState.zeros(2), BranchPolicy.sample(11))
    again = run_statevector(c, ClassicalState.zeros(2), BranchPolicy.sample(11))
    assert len(first) == 1
    assert first[0].classical_bits == again[0].classical_bits
    assert first[0].probability == pytest.approx(0.5)


def test_norm_holds_over_ten_thousand_gates():
    c = Circuit()
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    b = c.alloc_register("b", 1, RegisterRole.COLOR)
    d = c.alloc_register("d", 1, RegisterRole.COLOR)
    round_ = [
        Gate(GateKind.H, (a[0],)), Gate(GateKind.T, (a[0],)), Gate(GateKind.CNOT, (a[0], b[0])),
        Gate(GateKind.TDG, (b[0],)), Gate(GateKind.S, (d[0],)), Gate(GateKind.CNOT, (b[0], d[0])),
        Gate(GateKind.H, (d[0],)), Gate(GateKind.T, (d[0],)),
    ]
    for _ in range(1250):
        c.extend(round_)
    t = c.alloc_register("t", 1, RegisterRole.ANCILLA_MAGIC)
    emit_temporary_and(c, a[0], b[0], t[0])
    emit_uncompute_and(c, a[0], b[0], t[0])
    c.release_ancilla(t)
    assert len(c.gates) >= 10_000

    outcomes = run_statevector(c.freeze(), ClassicalState.zeros(c.qubit_count))
    assert len(outcomes) == 2
    assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-9)
    assert all(np.linalg.norm(o.state) == pytest.approx(1.0, abs=1e-9) for o in outcomes)


def test_norm_holds_over_a_long_and_uncompute_chain():
    c = Circuit(magic_mode=MagicMode.PREPARED)
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    b = c.alloc_register("b", 1, RegisterRole.COLOR)
    c.extend([Gate(GateKind.H, (a[0],)), Gate(GateKind.H, (b[0],))])
    for i in range(625):
        t = c.alloc_register(f"t{i}", 1, RegisterRole.ANCILLA_MAGIC)
        emit_temporary_and(c, a[0], b[0], t[0])
        emit_uncompute_and(c, a[0], b[0], t[0])
        c.release_ancilla(t)
    assert c.qubit_count == 3

    (outcome,) = run_statevector(c.freeze(), ClassicalState.zeros(3), BranchPolicy.sample(5))
    assert len(outcome.measurements) == 625
    assert np.linalg.norm(outcome.state) == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(np.abs(outcome.state[:4]) ** 2, 0.25)


def test_statevector_checks_released_qubits():
    c = Circuit()
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    anc = c.alloc_register("anc", 1, RegisterRole.ANCILLA_ZERO)
    c.append(Gate(GateKind.CNOT, (a[0], anc[0])))
    c.release_ancilla(anc)
    with pytest.raises(VerificationError):
        run_statevector(c, ClassicalState.from_registers(c, {"a": 1}))
    outcomes = run_statevector(c, ClassicalState.from_registers(c, {"a": 1}), verify=False)
    assert outcomes[0].read(anc) == 1


def test_permutation_and_statevector_agree_on_blocks():
    circuit = build_named_circuit("conditional-adder", 1)
    registers = [circuit.register(name) for name in ("ctrl", "A", "B")]
    for value in range(1 << 3):
        values = {"ctrl": value & 1, "A": (value >> 1) & 1, "B": value >> 2}
        state = ClassicalState.from_registers(circuit, values)
        expected = run_permutation(circuit, state)
        for outcome in run_statevector(circuit, state):
            assert [outcome.read(r) for r in registers] == [expected.read(r) for r in registers]


# =============================================================================
# EQUIVALENCE
# =============================================================================

def test_permutation_equivalence_of_an_adder():
    circuit = build_named_circuit("adder", 3)
    assert default_ports(circuit) == list(range(6))

    def reference(x):
        a, b = x & 7, x >> 3
        return a | (((a + b) % 8) << 3)

    verdict = assert_equivalence(circuit, reference)
    assert verdict.passed and verdict.mode == "permutation"


def test_failed_equivalence_reports_and_raises():
    circuit = build_named_circuit("subtractor", 2)
    verdict = assert_equivalence(circuit, lambda x: x)
    assert not verdict
    assert verdict.failures
    assert "first mismatch" in verdict.message
    with pytest.raises(VerificationError):
        verdict.raise_if_failed()


def test_reference_size_must_match_the_ports():
    circuit = build_named_circuit("toffoli")
    with pytest.raises(SimulationError):
        assert_equivalence(circuit, np.eye(4))
    with pytest.raises(SimulationError):
        assert_equivalence(circuit, [0, 1, 2])


def test_statevector_path_for_non_permutation_circuits():
    c = new_circuit(2)
    c.append(Gate(GateKind.H, (0,)))
    c.append(Gate(GateKind.H, (0,)))
    c.append(Gate(GateKind.CNOT, (0, 1)))
    verdict = assert_equivalence(c, [0, 3, 2, 1])
    assert verdict.passed, verdict.message
