#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
gadgets.py - Temporary logical-AND, measurement-based uncompute and Toffoli emitters

The emitters append macro gates; circuits.core.expand_macros turns them into
Clifford+T networks. Each emitter validates its operands against the live
circuit so that errors surface at the call site rather than at expansion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from circuits.core import (
    Circuit,
    Gate,
    GateKind,
    InitialState,
    MagicMode,
    QubitId,
    RegisterRole,
)
from utils.errors import GateError, MagicStateError

logger = logging.getLogger(__name__)


class GadgetKind(Enum):
    AND = "and"
    UNCOMPUTE = "uncompute"
    TOFFOLI = "toffoli"


@dataclass(frozen=True)
class GadgetHandle:
    """Record of one emitted gadget."""
    controls: Tuple[QubitId, QubitId]
    target: QubitId
    kind: GadgetKind

    def __post_init__(self):
        if len({*self.controls, self.target}) != 3:
            raise GateError(f"gadget qubits must be distinct: {self.controls}, {self.target}")


def emit_temporary_and(circuit: Circuit, a: QubitId, b: QubitId, target: QubitId) -> GadgetHandle:
    """
    Append TemporaryAND(a, b, target): target := a AND b.

    In INITIAL_STATE mode the target must be a magic_A qubit no gate has
    touched yet. In PREPARED mode it must be a |0> qubit (the expansion
    prepares |A> itself).

    Raises:
        MagicStateError: target is not a usable magic qubit
    """
    handle = GadgetHandle((a, b), target, GadgetKind.AND)
    if circuit.magic_mode is MagicMode.INITIAL_STATE:
        if circuit.initial_state(target) is not InitialState.MAGIC_A or not circuit.is_unused(target):
            raise MagicStateError(
                f"TemporaryAND target {target} must be an unused magic_A qubit "
                f"(initial state {circuit.initial_state(target).value})"
            )
    elif circuit.open_and(target) is not None:
        raise MagicStateError(f"TemporaryAND target {target} already holds an AND")
    circuit.append(Gate(GateKind.TEMPORARY_AND, (a, b, target)))
    return handle


def emit_uncompute_and(circuit: Circuit, a: QubitId, b: QubitId, target: QubitId,
                       verify: bool = True) -> GadgetHandle:
    """
    Append UncomputeAND(a, b, target), returning target to |0>.

    With verify=True the target must currently hold an AND of exactly (a, b)
    emitted on this circuit.
    """
    handle = GadgetHandle((a, b), target, GadgetKind.UNCOMPUTE)
    if verify and circuit.open_and(target) != frozenset((a, b)):
        raise GateError(
            f"UncomputeAND({a}, {b}, {target}) has no matching TemporaryAND "
            f"(target holds {sorted(circuit.open_and(target) or ())})"
        )
    circuit.append(Gate(GateKind.UNCOMPUTE_AND, (a, b, target)))
    return handle


def emit_toffoli(circuit: Circuit, a: QubitId, b: QubitId, z: QubitId) -> GadgetHandle:
    """
    z ^= a AND b through a borrowed magic ancilla.

    The ancilla is allocated, ANDed into, copied onto z, uncomputed and
    released; the Toffoli costs the 4 T-type gates of its AND.

    Raises:
        AncillaError: the circuit has a qubit limit and no room for the ancilla
    """
    handle = GadgetHandle((a, b), z, GadgetKind.TOFFOLI)
    anc = circuit.alloc_register(circuit.fresh_name("tof"), 1, RegisterRole.ANCILLA_MAGIC)
    emit_temporary_and(circuit, a, b, anc[0])
    circuit.append(Gate(GateKind.CNOT, (anc[0], z)))
    emit_uncompute_and(circuit, a, b, anc[0])
    circuit.release_ancilla(anc)
    return handle


def emit_toffoli_macro(circuit: Circuit, a: QubitId, b: QubitId, z: QubitId) -> GadgetHandle:
    """Append a single Toffoli macro; expand_macros supplies its scratch ancilla."""
    handle = GadgetHandle((a, b), z, GadgetKind.TOFFOLI)
    circuit.append(Gate(GateKind.TOFFOLI, (a, b, z)))
    return handle
