#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
resources.py - Gate tallies, block census and measured-versus-formula checks

Counting convention:
    * T and Tdg are both T-type gates.
    * A consumed |A> magic state is charged one T (it is T|+>), so every
      TemporaryAND costs 4 T-type gates whether the state is an initial
      state or prepared by explicit H, T gates.
    * MeasureX counts as one measurement and one H (its basis change).
    * A classically-controlled CZ counts as one CZ.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, computed_field

from arithmetic.blocks import ArithmeticBlock, BlockKind
from arithmetic.multiplier import multiplier_tcount
from circuits.core import Circuit, Gate, GateKind, InitialState, MagicMode, expand_macros
from utils.errors import FormulaDomainError

logger = logging.getLogger(__name__)


class ResourceReport(BaseModel):
    """Gate and qubit tallies of one circuit."""
    model_config = ConfigDict(frozen=True)

    t_count: int = 0
    tdg_count: int = 0
    cnot_count: int = 0
    h_count: int = 0
    s_count: int = 0
    x_count: int = 0
    cz_count: int = 0
    measurement_count: int = 0
    magic_state_count: int = 0
    qubit_count: int = 0
    ancilla_high_water: int = 0

    @computed_field
    @property
    def t_type_count(self) -> int:
        return self.t_count + self.tdg_count

    def __sub__(self, other: "ResourceReport") -> Dict[str, int]:
        """Per-field difference, handy for gadget deltas."""
        mine, theirs = self.model_dump(), other.model_dump()
        return {key: mine[key] - theirs[key] for key in mine}


class BlockCensus(BaseModel):
    model_config = ConfigDict(frozen=True)

    adders: int = 0
    conditional_adders: int = 0
    subtractors: int = 0
    multipliers: int = 0
    dividers: int = 0


# =============================================================================
# COUNTING
# =============================================================================

_PRIMITIVE_FIELDS = {
    GateKind.T: ("t_count",),
    GateKind.TDG: ("tdg_count",),
    GateKind.CNOT: ("cnot_count",),
    GateKind.H: ("h_count",),
    GateKind.S: ("s_count",),
    GateKind.X: ("x_count",),
    GateKind.CZ: ("cz_count",),
    GateKind.MEASURE_X: ("measurement_count", "h_count"),
    GateKind.CLASSICALLY_CONTROLLED_CZ: ("cz_count",),
}

# contributions of one macro gate, excluding the magic state
_AND_STRICT = Counter(t_count=1, tdg_count=2, cnot_count=6, h_count=1, s_count=1)
_AND_PREPARED = Counter(t_count=2, tdg_count=2, cnot_count=6, h_count=2, s_count=1)
_UNCOMPUTE = Counter(measurement_count=1, h_count=1, cz_count=1)


def _tally_primitives(gates: Iterable[Gate], tally: Counter) -> None:
    for gate in gates:
        for name in _PRIMITIVE_FIELDS[gate.kind]:
            tally[name] += 1


def _used_magic_qubits(circuit: Circuit, gates: Sequence[Gate]) -> int:
    used = {q for g in gates for q in g.operands}
    return sum(1 for q in used if circuit.initial_state(q) is InitialState.MAGIC_A)


def _magic_and_targets(circuit: Circuit, gates: Sequence[Gate]) -> int:
    return sum(1 for g in gates
               if g.kind is GateKind.TEMPORARY_AND and circuit.initial_state(g.operands[2]) is InitialState.MAGIC_A)


def count_resources(circuit: Circuit) -> ResourceReport:
    """
    Tally the fully expanded gate list in one pass.

    Example:
        >>> from circuits.core import new_circuit
        >>> count_resources(new_circuit(50)).t_type_count
        0
    """
    expanded = expand_macros(circuit)
    tally: Counter = Counter()
    _tally_primitives(expanded.gates, tally)
    magic = _used_magic_qubits(expanded, expanded.gates)
    tally["t_count"] += magic
    return ResourceReport(
        **tally,
        magic_state_count=magic,
        qubit_count=expanded.qubit_count,
        ancilla_high_water=expanded.ancilla_high_water,
    )


def count_macro_resources(circuit: Circuit, gates: Optional[Sequence[Gate]] = None) -> ResourceReport:
    """
    Tally without expanding, using fixed per-gadget contributions.

    Equal to count_resources(circuit) on whole circuits. With `gates` it
    tallies a slice (a block's gate span); qubit totals then describe the
    whole circuit.
    """
    gates = circuit.gates if gates is None else gates
    strict = circuit.magic_mode is MagicMode.INITIAL_STATE
    and_cost = _AND_STRICT if strict else _AND_PREPARED
    tally: Counter = Counter()
    toffolis = 0
    for gate in gates:
        if gate.kind is GateKind.TEMPORARY_AND:
            tally.update(and_cost)
        elif gate.kind is GateKind.UNCOMPUTE_AND:
            tally.update(_UNCOMPUTE)
        elif gate.kind is GateKind.TOFFOLI:
            toffolis += 1
            tally.update(and_cost)
            tally.update(_UNCOMPUTE)
            tally["cnot_count"] += 1
        else:
            _tally_primitives((gate,), tally)

    # recycled magic_A qubits may reappear in later slices as plain qubits
    magic = _magic_and_targets(circuit, gates) + (toffolis if strict else 0)
    tally["t_count"] += magic
    all_toffolis = sum(1 for g in circuit.gates if g.kind is GateKind.TOFFOLI)
    scratch = (all_toffolis if strict else min(all_toffolis, 1))
    return ResourceReport(
        **tally,
        magic_state_count=magic,
        qubit_count=circuit.qubit_count + scratch,
        ancilla_high_water=circuit.ancilla_high_water + (1 if all_toffolis else 0),
    )


def block_tcount(circuit: Circuit, block: ArithmeticBlock) -> int:
    """Measured T-type count inside one block's gate span."""
    start, stop = block.gate_span
    return count_macro_resources(circuit, circuit.gates[start:stop]).t_type_count


# =============================================================================
# CENSUS AND BOUNDS
# =============================================================================

_CENSUS_FIELD = {
    BlockKind.ADDER: "adders",
    BlockKind.CONDITIONAL_ADDER: "conditional_adders",
    BlockKind.SUBTRACTOR: "subtractors",
    BlockKind.MULTIPLIER: "multipliers",
    BlockKind.DIVIDER: "dividers",
}


def block_census(circuit: Circuit) -> BlockCensus:
    counts = Counter(_CENSUS_FIELD[b.kind] for b in circuit.blocks)
    return BlockCensus(**counts)


def proposed_block_bound(kind: BlockKind, widths: Sequence[int]) -> int:
    """
    Stated T-count of a block at its operand widths.

    Adders and subtractors use the widest operand. The multiplier takes
    (addend width, control width) and gives 8|a||b| - 4|a|, which is
    8n^2 - 4n for equal widths.
    """
    if not widths or min(widths) < 1:
        raise FormulaDomainError(f"block widths must be >= 1, got {tuple(widths)}")
    n = max(widths)
    if kind is BlockKind.ADDER:
        return 4 * n
    if kind is BlockKind.SUBTRACTOR:
        return 4 * n - 4
    if kind is BlockKind.CONDITIONAL_ADDER:
        return 8 * n - 4
    if kind is BlockKind.MULTIPLIER:
        a_width, b_width = (widths[0], widths[1]) if len(widths) > 1 else (n, n)
        return multiplier_tcount(a_width, b_width)
    raise FormulaDomainError(f"no proposed formula for {kind.value}")


def block_rows(circuit: Circuit) -> List[Dict]:
    """Measured T-type count and stated bound of every recorded block."""
    rows = []
    for index, block in enumerate(circuit.blocks):
        measured = block_tcount(circuit, block)
        bound = proposed_block_bound(block.kind, block.operand_widths or (block.operand_width,))
        rows.append({
            "index": index,
            "kind": block.kind.value,
            "widths": tuple(block.operand_widths),
            "measured_t": measured,
            "stated_t": bound,
            "within_bound": measured <= bound,
        })
    return rows


def arithmetic_width(circuit: Circuit) -> int:
    """Widest operand over all recorded blocks (0 without blocks)."""
    return max((max(b.operand_widths or (b.operand_width,)) for b in circuit.blocks), default=0)
