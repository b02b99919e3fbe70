"""
conftest.py - Shared fixtures

The permutation helper writes integer values into named registers for a
whole batch of inputs and returns the output bit matrix, so arithmetic
tests can sweep every operand combination in one simulator pass.
"""

from pathlib import Path
from typing import Callable, Dict

import numpy as np
import pytest
import yaml

from circuits.core import Circuit
from simulation.permutation import read_register_batch, run_permutation_batch, write_register_batch

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def oracle_cases() -> dict:
    return yaml.safe_load((FIXTURES / "oracle_cases.yaml").read_text(encoding="utf-8"))


@pytest.fixture
def permute() -> Callable[[Circuit, Dict[str, np.ndarray]], Callable[[str], np.ndarray]]:
    """
    permute(circuit, {"A": values, ...}) runs the batch and returns a reader
    mapping a register name to its output values. The reader also accepts
    "__rest__" and returns True per column if every unnamed qubit ended at 0.
    """
    def run(circuit: Circuit, values: Dict[str, np.ndarray]):
        batch = len(next(iter(values.values())))
        bits = np.zeros((circuit.qubit_count, batch), dtype=np.uint8)
        for name, column in values.items():
            write_register_batch(bits, circuit.register(name).qubits, column)
        out = run_permutation_batch(circuit, bits)
        named = {q for reg in circuit.registers.values() for q in reg.qubits}

        def read(name: str) -> np.ndarray:
            if name == "__rest__":
                rest = [q for q in range(circuit.qubit_count) if q not in named]
                return ~out[rest].any(axis=0) if rest else np.ones(batch, dtype=bool)
            return read_register_batch(out, circuit.register(name).qubits)
        return read
    return run


def operand_grid(*widths: int):
    """All combinations of operands of the given widths, one array per operand."""
    grids = np.meshgrid(*[np.arange(1 << w, dtype=np.int64) for w in widths], indexing="ij")
    return [g.reshape(-1) for g in grids]


@pytest.fixture
def grid():
    return operand_grid
