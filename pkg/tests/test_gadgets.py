#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_gadgets.py - Temporary AND, measurement-based uncompute, Toffoli
"""

import numpy as np
import pytest

from analysis.resources import count_resources
from circuits.core import Circuit, GateKind, MagicMode, RegisterRole, Release, expand_macros
from circuits.gadgets import emit_temporary_and, emit_toffoli, emit_uncompute_and
from cli import build_named_circuit
from simulation.equivalence import assert_equivalence
from simulation.models import ClassicalState
from simulation.statevector import run_statevector
from utils.errors import GateError, MagicStateError


def _and_circuit(magic_mode=MagicMode.INITIAL_STATE, uncompute=False):
    c = Circuit(magic_mode=magic_mode)
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    b = c.alloc_register("b", 1, RegisterRole.COLOR)
    t = c.alloc_register("t", 1, RegisterRole.ANCILLA_MAGIC)
    emit_temporary_and(c, a[0], b[0], t[0])
    if uncompute:
        emit_uncompute_and(c, a[0], b[0], t[0])
        c.release_ancilla(t)
    return c.freeze()


def _toffoli_matrix() -> np.ndarray:
    # ports (a, b, z) are bits 0, 1, 2: inputs 3 and 7 swap
    perm = list(range(8))
    perm[3], perm[7] = 7, 3
    return np.eye(8)[:, perm]


# =============================================================================
# T-TYPE COSTS
# =============================================================================

@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_gadget_t_type_costs(magic_mode):
    assert count_resources(build_named_circuit("and", magic_mode=magic_mode)).t_type_count == 4
    assert count_resources(build_named_circuit("uncompute", magic_mode=magic_mode)).t_type_count == 0
    assert count_resources(build_named_circuit("toffoli", magic_mode=magic_mode)).t_type_count == 4


def test_strict_and_consumes_one_magic_state():
    report = count_resources(_and_circuit(MagicMode.INITIAL_STATE))
    assert report.magic_state_count == 1
    assert (report.t_count, report.tdg_count) == (2, 2)
    assert report.cnot_count == 6


def test_prepared_and_shows_the_preparation_gates():
    report = count_resources(_and_circuit(MagicMode.PREPARED))
    assert report.magic_state_count == 0
    assert (report.t_count, report.tdg_count) == (2, 2)
    assert report.h_count == 2


def test_uncompute_is_one_measurement_and_one_cz():
    report = count_resources(build_named_circuit("uncompute"))
    assert report.measurement_count == 1
    assert report.cz_count == 1
    assert report.t_type_count == 0


# =============================================================================
# OPERAND CHECKS
# =============================================================================

def test_strict_and_target_must_be_an_unused_magic_qubit():
    c = Circuit()
    a = c.alloc_register("a", 1, RegisterRole.COLOR)
    b = c.alloc_register("b", 1, RegisterRole.COLOR)
    zero = c.alloc_register("z", 1, RegisterRole.ANCILLA_ZERO)
    with pytest.raises(MagicStateError):
        emit_temporary_and(c, a[0], b[0], zero[0])
    t = c.alloc_register("t", 1, RegisterRole.ANCILLA_MAGIC)
    emit_temporary_and(c, a[0], b[0], t[0])
    emit_uncompute_and(c, a[0], b[0], t[0])
    with pytest.raises(MagicStateError):
        emit_temporary_and(c, a[0], b[0], t[0])


def test_uncompute_needs_a_matching_and():
    c = Circuit()
    r = c.alloc_register("r", 3, RegisterRole.COLOR)
    t = c.alloc_register("t", 1, RegisterRole.ANCILLA_MAGIC)
    with pytest.raises(GateError):
        emit_uncompute_and(c, r[0], r[1], t[0])
    emit_temporary_and(c, r[0], r[1], t[0])
    with pytest.raises(GateError):
        emit_uncompute_and(c, r[0], r[2], t[0])


def test_gadget_qubits_must_be_distinct():
    c = Circuit()
    r = c.alloc_register("r", 2, RegisterRole.COLOR)
    with pytest.raises(GateError):
        emit_toffoli(c, r[0], r[0], r[1])


def test_toffoli_releases_its_ancilla():
    c = build_named_circuit("toffoli")
    assert len(c.releases) == 1
    assert c.releases[0].register.startswith("tof")
    assert "tof0" not in c.registers


# =============================================================================
# STATEVECTOR BEHAVIOUR
# =============================================================================

@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_and_writes_the_conjunction_exactly(magic_mode):
    c = _and_circuit(magic_mode)
    for a in (0, 1):
        for b in (0, 1):
            state = ClassicalState.from_registers(c, {"a": a, "b": b})
            (outcome,) = run_statevector(c, state)
            assert outcome.read(c.register("t")) == a & b
            assert outcome.read(c.register("a")) == a


def test_and_then_uncompute_is_the_identity():
    c = _and_circuit(uncompute=True)
    verdict = assert_equivalence(c, np.eye(4))
    assert verdict.passed, verdict.message


def test_uncompute_branches_are_equally_likely():
    c = _and_circuit(uncompute=True)
    state = ClassicalState.from_registers(c, {"a": 1, "b": 1})
    outcomes = run_statevector(c, state)
    assert len(outcomes) == 2
    assert sum(o.probability for o in outcomes) == pytest.approx(1.0)
    assert {o.measurements[0].outcome for o in outcomes} == {0, 1}
    assert all(o.probability == pytest.approx(0.5) for o in outcomes)


@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_toffoli_gadget_matches_the_toffoli_unitary(magic_mode):
    c = build_named_circuit("toffoli", magic_mode=magic_mode)
    verdict = assert_equivalence(c, _toffoli_matrix())
    assert verdict.passed, verdict.message
    assert verdict.mode == "unitary"


def test_toffoli_expansion_has_no_macros_left():
    kinds = {g.kind for g in expand_macros(build_named_circuit("toffoli")).gates}
    assert not kinds & {GateKind.TEMPORARY_AND, GateKind.UNCOMPUTE_AND, GateKind.TOFFOLI}
    assert GateKind.MEASURE_X in kinds


def _without_gate(circuit, index):
    broken = circuit.copy()
    del broken.gates[index]
    broken.releases = [
        Release(r.position - (r.position > index), r.qubits, r.register) for r in circuit.releases
    ]
    return broken.freeze()


@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_toffoli_missing_one_t_gate_fails_equivalence(magic_mode):
    expanded = expand_macros(build_named_circuit("toffoli", magic_mode=magic_mode))
    first_t = next(i for i, g in enumerate(expanded.gates) if g.kind in (GateKind.T, GateKind.TDG))
    verdict = assert_equivalence(_without_gate(expanded, first_t), _toffoli_matrix())
    assert not verdict.passed
    assert verdict.mode == "unitary"
    assert verdict.max_deviation > 0.1
