#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
statevector.py - Dense statevector simulation with mid-circuit X measurements

Amplitudes are indexed so that bit i of the index is qubit i. The vector is
viewed as a rank-k tensor of shape (2,)*k; qubit q is tensor axis k-1-q.

MeasureX applies H, projects onto the outcome, renormalises and resets the
qubit to |0>. With BranchPolicy.enumerate_all every outcome of non-zero
probability becomes its own branch; with BranchPolicy.sample(seed) a seeded
numpy Generator picks one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from circuits.core import Circuit, GateKind, InitialState, expand_macros
from simulation.models import BranchPolicy, ClassicalState, MeasurementRecord, SimOutcome
from utils.errors import SimulationError, VerificationError

logger = logging.getLogger(__name__)

DEFAULT_STATEVECTOR_CAP = 16
NORM_TOLERANCE = 1e-9
BRANCH_EPSILON = 1e-12

_SQRT2_INV = 1 / np.sqrt(2)
_PHASES = {
    GateKind.S: 1j,
    GateKind.T: np.exp(1j * np.pi / 4),
    GateKind.TDG: np.exp(-1j * np.pi / 4),
}


@dataclass
class StateVector:
    """Normalised amplitude vector over `qubit_count` qubits."""
    amplitudes: np.ndarray
    qubit_count: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.amplitudes.size != 1 << self.qubit_count:
            raise SimulationError(
                f"{self.amplitudes.size} amplitudes do not describe {self.qubit_count} qubits"
            )

    @classmethod
    def basis(cls, index: int, qubit_count: int) -> "StateVector":
        amplitudes = np.zeros(1 << qubit_count, dtype=np.complex128)
        amplitudes[index] = 1.0
        return cls(amplitudes, qubit_count)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.qubit_count)

    # -------------------------------------------------------------------------
    # tensor views

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.qubit_count) if self.qubit_count else self.amplitudes

    def _slices(self, assignment: Dict[int, int]) -> tuple:
        """Tensor index fixing each qubit in `assignment` to its value."""
        idx = [slice(None)] * self.qubit_count
        for q, value in assignment.items():
            idx[self.qubit_count - 1 - q] = value
        return tuple(idx)

    # -------------------------------------------------------------------------
    # gates

    def apply_x(self, q: int) -> None:
        t = self._tensor()
        zero, one = self._slices({q: 0}), self._slices({q: 1})
        t[zero], t[one] = t[one].copy(), t[zero].copy()

    def apply_h(self, q: int) -> None:
        t = self._tensor()
        zero, one = self._slices({q: 0}), self._slices({q: 1})
        a0, a1 = t[zero].copy(), t[one].copy()
        t[zero] = (a0 + a1) * _SQRT2_INV
        t[one] = (a0 - a1) * _SQRT2_INV

    def apply_phase(self, q: int, phase: complex) -> None:
        self._tensor()[self._slices({q: 1})] *= phase

    def apply_cnot(self, control: int, target: int) -> None:
        t = self._tensor()
        s0, s1 = self._slices({control: 1, target: 0}), self._slices({control: 1, target: 1})
        t[s0], t[s1] = t[s1].copy(), t[s0].copy()

    def apply_cz(self, a: int, b: int) -> None:
        self._tensor()[self._slices({a: 1, b: 1})] *= -1

    def probability_one(self, q: int) -> float:
        return float(np.sum(np.abs(self._tensor()[self._slices({q: 1})]) ** 2))

    def project_and_reset(self, q: int, outcome: int, probability: float) -> None:
        """Keep the `outcome` component of qubit q, renormalise, and move it to |0>."""
        t = self._tensor()
        zero, one = self._slices({q: 0}), self._slices({q: 1})
        kept = t[one if outcome else zero].copy() / np.sqrt(probability)
        t[zero] = kept
        t[one] = 0.0


# =============================================================================
# INITIAL STATE
# =============================================================================

def initial_statevector(circuit: Circuit, input_state: ClassicalState) -> StateVector:
    """
    Product state: basis bits for zero/data qubits, |A> for magic_A qubits.

    Raises:
        SimulationError: wrong input width, or a magic qubit given bit 1
    """
    k = circuit.qubit_count
    if input_state.qubit_count != k:
        raise SimulationError(f"input assigns {input_state.qubit_count} qubits, circuit has {k}")
    vector = np.ones(1, dtype=np.complex128)
    magic = np.array([1.0, np.exp(1j * np.pi / 4)], dtype=np.complex128) * _SQRT2_INV
    # kron from the most significant qubit down keeps bit i = qubit i
    for q in reversed(range(k)):
        if circuit.initial_state(q) is InitialState.MAGIC_A:
            if input_state.bits[q]:
                raise SimulationError(f"magic qubit {q} cannot be given input bit 1")
            local = magic
        else:
            local = np.array([1.0, 0.0]) if input_state.bits[q] == 0 else np.array([0.0, 1.0])
        vector = np.kron(vector, local)
    return StateVector(vector, k)


# =============================================================================
# RUNNER
# =============================================================================

@dataclass
class _Branch:
    state: StateVector
    records: List[MeasurementRecord] = field(default_factory=list)
    probability: float = 1.0

    @property
    def bits(self) -> Dict[str, int]:
        return {r.cbit: r.outcome for r in self.records}


def _check_norm(branch: _Branch, where: str, tolerance: float) -> None:
    drift = abs(branch.state.norm - 1.0)
    if drift > tolerance:
        raise SimulationError(f"norm drift {drift:.3e} exceeds {tolerance:g} {where}")


def _check_releases(branch: _Branch, qubits, position: int, tolerance: float) -> None:
    for q in qubits:
        p1 = branch.state.probability_one(q)
        if p1 > tolerance:
            raise VerificationError(
                f"released qubit {q} is not |0> at gate {position} (P(1) = {p1:.3e})"
            )


def run_statevector(
    circuit: Circuit,
    input_state: ClassicalState,
    branch_policy: BranchPolicy = BranchPolicy.enumerate_all(),
    cap: int = DEFAULT_STATEVECTOR_CAP,
    verify: bool = True,
    norm_tolerance: float = NORM_TOLERANCE,
) -> List[SimOutcome]:
    """
    Simulate a circuit at gate level.

    Macro gates are expanded first. Each measurement either splits every live
    branch (enumerate_all) or is sampled once per run (sample).

    Args:
        circuit: Circuit to run (macros allowed)
        input_state: Basis bits for every qubit of the expanded circuit;
            magic_A qubits must be 0. A shorter input is padded with zeros for
            the expansion scratch qubits.
        branch_policy: Branch handling for MeasureX
        cap: Maximum number of qubits
        verify: Check released qubits are |0> at their release position

    Returns:
        One SimOutcome per branch

    Raises:
        SimulationError: cap exceeded, norm drift, bad input
        VerificationError: a released qubit is not |0>
    """
    expanded = expand_macros(circuit)
    k = expanded.qubit_count
    if k > cap:
        raise SimulationError(f"statevector needs {k} qubits, cap is {cap}")
    if input_state.qubit_count < k:
        input_state = ClassicalState(input_state.bits + (0,) * (k - input_state.qubit_count))

    rng = None if branch_policy.enumerates else np.random.default_rng(branch_policy.seed)
    branches = [_Branch(initial_statevector(expanded, input_state))]
    releases: Dict[int, List[int]] = {}
    for release in expanded.releases:
        releases.setdefault(release.position, []).extend(release.qubits)

    for position, gate in enumerate(expanded.gates):
        if verify and position in releases:
            for branch in branches:
                _check_releases(branch, releases[position], position, norm_tolerance)
        ops = gate.operands
        kind = gate.kind
        if kind is GateKind.MEASURE_X:
            branches = _measure(branches, ops[0], gate.cbit, rng, norm_tolerance)
            continue
        for branch in branches:
            state = branch.state
            if kind is GateKind.X:
                state.apply_x(ops[0])
            elif kind is GateKind.H:
                state.apply_h(ops[0])
            elif kind in _PHASES:
                state.apply_phase(ops[0], _PHASES[kind])
            elif kind is GateKind.CNOT:
                state.apply_cnot(*ops)
            elif kind is GateKind.CZ:
                state.apply_cz(*ops)
            elif kind is GateKind.CLASSICALLY_CONTROLLED_CZ:
                if branch.bits.get(gate.cbit) == 1:
                    state.apply_cz(*ops)
            else:
                raise SimulationError(f"unsupported gate {gate} after expansion")

    if verify and len(expanded.gates) in releases:
        for branch in branches:
            _check_releases(branch, releases[len(expanded.gates)], len(expanded.gates), norm_tolerance)
    for branch in branches:
        _check_norm(branch, "at end of circuit", norm_tolerance)

    return [
        SimOutcome(b.state.amplitudes, tuple(b.records), branch_policy, b.probability)
        for b in branches
    ]


def _measure(branches: List[_Branch], q: int, cbit: str, rng, tolerance: float) -> List[_Branch]:
    out: List[_Branch] = []
    for branch in branches:
        branch.state.apply_h(q)
        p1 = branch.state.probability_one(q)
        probabilities = (1.0 - p1, p1)
        if rng is not None:
            outcomes = [1 if rng.random() < p1 else 0]
        else:
            outcomes = [o for o in (0, 1) if probabilities[o] > BRANCH_EPSILON]
        for i, outcome in enumerate(outcomes):
            child = branch if i == len(outcomes) - 1 else _Branch(branch.state.copy(), list(branch.records), branch.probability)
            child.state.project_and_reset(q, outcome, probabilities[outcome])
            child.records.append(MeasurementRecord(cbit, outcome, probabilities[outcome]))
            child.probability *= probabilities[outcome]
            _check_norm(child, f"after measuring qubit {q}", tolerance)
            out.append(child)
    logger.debug("MeasureX q%d @%s: %d -> %d branches", q, cbit, len(branches), len(out))
    return out
