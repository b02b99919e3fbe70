#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
models.py - Value types shared by the simulators

ClassicalState  basis-state bit assignment (bit i = qubit i)
BranchPolicy    how mid-circuit X measurements are resolved
SimOutcome      one branch of a statevector run (or a permutation result)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import numpy as np

from circuits.core import Circuit, Register
from utils.errors import SimulationError


@dataclass(frozen=True)
class ClassicalState:
    """
    Assignment of 0/1 to every qubit of a circuit.

    Kets are written with qubit 0 rightmost, so "01" means qubit 0 = 1.
    """
    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise SimulationError(f"bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    # -------------------------------------------------------------------------
    # constructors

    @classmethod
    def zeros(cls, qubit_count: int) -> "ClassicalState":
        return cls((0,) * qubit_count)

    @classmethod
    def from_int(cls, value: int, qubit_count: int) -> "ClassicalState":
        if not 0 <= value < 1 << qubit_count:
            raise SimulationError(f"basis index {value} does not fit {qubit_count} qubits")
        return cls(tuple((value >> i) & 1 for i in range(qubit_count)))

    @classmethod
    def from_ket(cls, ket: str) -> "ClassicalState":
        ket = ket.strip().strip("|>⟩")
        if not ket or set(ket) - {"0", "1"}:
            raise SimulationError(f"bitstring must contain only 0 and 1, got '{ket}'")
        return cls(tuple(int(ch) for ch in reversed(ket)))

    @classmethod
    def from_registers(cls, circuit: Circuit,
                       values: Mapping[Union[str, Register], int]) -> "ClassicalState":
        """All-zero state with the given register values written in."""
        return cls.zeros(circuit.qubit_count).with_registers(circuit, values)

    # -------------------------------------------------------------------------
    # access

    @property
    def qubit_count(self) -> int:
        return len(self.bits)

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def to_ket(self) -> str:
        return "".join(str(b) for b in reversed(self.bits))

    def read(self, register: Register) -> int:
        return sum(self.bits[q] << i for i, q in enumerate(register.qubits))

    def with_registers(self, circuit: Circuit,
                       values: Mapping[Union[str, Register], int]) -> "ClassicalState":
        bits = list(self.bits)
        for key, value in values.items():
            register = circuit.register(key) if isinstance(key, str) else key
            if not 0 <= value < 1 << register.width:
                raise SimulationError(f"value {value} does not fit register '{register.name}'")
            for i, q in enumerate(register.qubits):
                bits[q] = (value >> i) & 1
        return ClassicalState(tuple(bits))

    def __str__(self) -> str:
        return f"|{self.to_ket()}>"


@dataclass(frozen=True)
class BranchPolicy:
    """Either follow every measurement branch or sample one with a seeded generator."""
    kind: str = "enumerate_all"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("enumerate_all", "sample"):
            raise SimulationError(f"unknown branch policy '{self.kind}'")

    @classmethod
    def enumerate_all(cls) -> "BranchPolicy":
        return cls("enumerate_all")

    @classmethod
    def sample(cls, seed: Optional[int] = None) -> "BranchPolicy":
        return cls("sample", seed)

    @property
    def enumerates(self) -> bool:
        return self.kind == "enumerate_all"

    def __str__(self) -> str:
        return self.kind if self.enumerates else f"sample({self.seed})"


@dataclass(frozen=True)
class MeasurementRecord:
    cbit: str
    outcome: int
    probability: float


@dataclass
class SimOutcome:
    """
    Final state of one simulation branch.

    Attributes:
        state: Amplitude vector (statevector runs) or ClassicalState
        measurements: Measurement records in execution order
        policy: Branch policy that produced this outcome
        probability: Probability of this branch
    """
    state: Union[np.ndarray, ClassicalState]
    measurements: Tuple[MeasurementRecord, ...] = ()
    policy: BranchPolicy = field(default_factory=BranchPolicy.enumerate_all)
    probability: float = 1.0

    @property
    def qubit_count(self) -> int:
        if isinstance(self.state, ClassicalState):
            return self.state.qubit_count
        return int(self.state.size).bit_length() - 1

    @property
    def classical_bits(self) -> Dict[str, int]:
        return {m.cbit: m.outcome for m in self.measurements}

    def basis_index(self, tolerance: float = 1e-10) -> int:
        """Index of the basis state this branch sits in (up to phase)."""
        if isinstance(self.state, ClassicalState):
            return self.state.to_int()
        index = int(np.argmax(np.abs(self.state)))
        if abs(abs(self.state[index]) - 1.0) > tolerance:
            raise SimulationError(
                f"branch is not a basis state (largest |amplitude| {abs(self.state[index]):.6f})"
            )
        return index

    def bits(self, tolerance: float = 1e-10) -> ClassicalState:
        if isinstance(self.state, ClassicalState):
            return self.state
        return ClassicalState.from_int(self.basis_index(tolerance), self.qubit_count)

    def read(self, register: Register, tolerance: float = 1e-10) -> int:
        return self.bits(tolerance).read(register)

    def to_dict(self) -> dict:
        record = {
            "policy": str(self.policy),
            "probability": self.probability,
            "measurements": [
                {"cbit": m.cbit, "outcome": m.outcome, "probability": m.probability}
                for m in self.measurements
            ],
        }
        try:
            record["basis_state"] = self.bits().to_ket()
        except SimulationError:
            nonzero = np.flatnonzero(np.abs(self.state) > 1e-12)
            record["amplitudes"] = {
                format(int(i), f"0{self.qubit_count}b"): [float(self.state[i].real), float(self.state[i].imag)]
                for i in nonzero
            }
        return record


def states_from_ints(values: Iterable[int], qubit_count: int) -> np.ndarray:
    """(qubit_count, batch) uint8 bit matrix, one column per basis index."""
    values = np.asarray(list(values), dtype=np.int64)
    shifts = np.arange(qubit_count, dtype=np.int64)[:, None]
    return ((values[None, :] >> shifts) & 1).astype(np.uint8)
