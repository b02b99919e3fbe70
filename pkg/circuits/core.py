#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
core.py - Gate IR, qubit registers, circuit container and macro expansion

A Circuit is an ordered gate list over integer qubit indices. Registers name
groups of qubits (position 0 = least-significant bit) and carry a role that
decides their initial state and whether they may be released and recycled.

Three macro gates exist on top of the primitive Clifford+T set:

    TemporaryAND(a, b, t)   t := a AND b, t starts in |A> = (|0> + e^{i pi/4}|1>)/sqrt(2)
    UncomputeAND(a, b, t)   t := 0 by X-basis measurement and a CZ fix-up
    Toffoli(a, b, z)        z ^= a AND b

expand_macros() rewrites them into {X, H, S, T, Tdg, CNOT, CZ, MeasureX,
ClassicallyControlledCZ}.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from utils.errors import AncillaError, CircuitError, GateError, MagicStateError, RegisterError

logger = logging.getLogger(__name__)

QubitId = int


# =============================================================================
# ENUMS
# =============================================================================

class RegisterRole(Enum):
    """What a register holds; decides initial state and release rules."""
    POSITION_Y = "position_y"
    POSITION_X = "position_x"
    COLOR = "color"
    CONSTANT = "constant"
    ANCILLA_ZERO = "ancilla_zero"
    ANCILLA_MAGIC = "ancilla_magic"
    GARBAGE = "garbage"
    OUTPUT = "output"

    @property
    def is_ancilla(self) -> bool:
        return self in (RegisterRole.ANCILLA_ZERO, RegisterRole.ANCILLA_MAGIC)

    @property
    def is_data(self) -> bool:
        return self in (RegisterRole.POSITION_Y, RegisterRole.POSITION_X, RegisterRole.COLOR)


class InitialState(Enum):
    """State of a qubit before the first gate."""
    ZERO = "zero"
    MAGIC_A = "magic_A"
    DATA = "data"


class MagicMode(Enum):
    """
    How |A> states reach TemporaryAND targets.

    INITIAL_STATE: magic qubits start in |A>; strict bookkeeping, no recycling.
    PREPARED: magic qubits start in |0>; each AND expansion prepends H, T.
    """
    INITIAL_STATE = "initial_state"
    PREPARED = "prepared"


class GateKind(Enum):
    """Every operation the IR can hold."""
    X = "X"
    H = "H"
    S = "S"
    T = "T"
    TDG = "Tdg"
    CNOT = "CNOT"
    CZ = "CZ"
    TEMPORARY_AND = "TemporaryAND"
    UNCOMPUTE_AND = "UncomputeAND"
    TOFFOLI = "Toffoli"
    MEASURE_X = "MeasureX"
    CLASSICALLY_CONTROLLED_CZ = "ClassicallyControlledCZ"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def is_macro(self) -> bool:
        return self in MACRO_KINDS

    @property
    def is_permutation(self) -> bool:
        """True for gates that permute computational basis states."""
        return self in PERMUTATION_KINDS

    @property
    def uses_cbit(self) -> bool:
        return self in (GateKind.MEASURE_X, GateKind.CLASSICALLY_CONTROLLED_CZ)


_ARITY: Dict[GateKind, int] = {
    GateKind.X: 1, GateKind.H: 1, GateKind.S: 1, GateKind.T: 1, GateKind.TDG: 1,
    GateKind.MEASURE_X: 1,
    GateKind.CNOT: 2, GateKind.CZ: 2, GateKind.CLASSICALLY_CONTROLLED_CZ: 2,
    GateKind.TEMPORARY_AND: 3, GateKind.UNCOMPUTE_AND: 3, GateKind.TOFFOLI: 3,
}

MACRO_KINDS = frozenset({GateKind.TEMPORARY_AND, GateKind.UNCOMPUTE_AND, GateKind.TOFFOLI})
PERMUTATION_KINDS = frozenset({
    GateKind.X, GateKind.CNOT, GateKind.TOFFOLI, GateKind.TEMPORARY_AND, GateKind.UNCOMPUTE_AND,
})


# =============================================================================
# VALUE TYPES
# =============================================================================

@dataclass(frozen=True)
class Register:
    """
    Named, ordered group of qubits.

    Attributes:
        name: Identifier, unique within a circuit
        qubits: Qubit indices, position 0 is the least-significant bit
        role: What the register holds
    """
    name: str
    qubits: Tuple[QubitId, ...]
    role: RegisterRole

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) < 1:
            raise RegisterError(f"register '{self.name}' must have width >= 1")
        if len(set(self.qubits)) != len(self.qubits):
            raise RegisterError(f"register '{self.name}' repeats a qubit: {self.qubits}")

    @property
    def width(self) -> int:
        return len(self.qubits)

    def __len__(self) -> int:
        return len(self.qubits)

    def __iter__(self) -> Iterator[QubitId]:
        return iter(self.qubits)

    def __getitem__(self, index: int) -> QubitId:
        return self.qubits[index]

    def view(self, lo: int, hi: int) -> "Register":
        """
        Non-owning slice over bit positions [lo, hi).

        Views are never entered in a circuit's register table; blocks use them
        to act on a bit window of an owned register.
        """
        if not 0 <= lo < hi <= self.width:
            raise RegisterError(f"bad view [{lo}:{hi}] of '{self.name}' (width {self.width})")
        return Register(f"{self.name}[{lo}:{hi}]", self.qubits[lo:hi], self.role)


@dataclass(frozen=True)
class Gate:
    """
    One IR operation.

    Attributes:
        kind: Gate kind
        operands: Qubit indices; controls first, target last
        cbit: Classical bit produced (MeasureX) or tested (ClassicallyControlledCZ)
    """
    kind: GateKind
    operands: Tuple[QubitId, ...]
    cbit: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(int(q) for q in self.operands))
        if len(self.operands) != self.kind.arity:
            raise GateError(
                f"{self.kind.value} takes {self.kind.arity} operand(s), got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise GateError(f"{self.kind.value} has duplicate operands {self.operands}")
        if any(q < 0 for q in self.operands):
            raise GateError(f"{self.kind.value} has a negative operand {self.operands}")
        if self.kind.uses_cbit and not self.cbit:
            raise GateError(f"{self.kind.value} needs a classical bit")
        if not self.kind.uses_cbit and self.cbit is not None:
            raise GateError(f"{self.kind.value} does not take a classical bit")

    def __str__(self) -> str:
        text = " ".join([self.kind.value, *map(str, self.operands)])
        return f"{text} @{self.cbit}" if self.cbit else text


@dataclass(frozen=True)
class Release:
    """Ancilla release recorded at a gate position; simulators check |0> there."""
    position: int
    qubits: Tuple[QubitId, ...]
    register: str


# =============================================================================
# CIRCUIT
# =============================================================================

class Circuit:
    """
    Ordered gate sequence over a qubit pool.

    The circuit is mutable while a single builder appends to it; freeze()
    makes it read-only for simulators and counters.

    Attributes:
        qubit_count: Number of qubits
        gates: Gates in execution order
        registers: Live registers by name, in allocation order
        magic_mode: How |A> states are supplied
        releases: Recorded ancilla releases
        blocks: Arithmetic block records (see arithmetic.blocks)
        ancilla_high_water: Peak number of simultaneously live ancilla qubits
    """

    def __init__(
        self,
        qubit_count: int = 0,
        magic_mode: MagicMode = MagicMode.INITIAL_STATE,
        max_qubits: Optional[int] = None,
    ):
        if qubit_count < 0:
            raise CircuitError(f"qubit_count must be >= 0, got {qubit_count}")
        self.qubit_count = qubit_count
        self.magic_mode = MagicMode(magic_mode)
        self.max_qubits = max_qubits
        self.gates: List[Gate] = []
        self.registers: Dict[str, Register] = {}
        self.releases: List[Release] = []
        self.blocks: list = []
        self.ancilla_high_water = 0

        self._initial: Dict[QubitId, InitialState] = {}
        self._names: Set[str] = set()
        self._owner: Dict[QubitId, str] = {}
        self._recycled: List[QubitId] = []
        self._touched: Set[QubitId] = set()
        self._cleared: Set[QubitId] = set()
        self._cbits: Set[str] = set()
        self._ancilla_qubits: Set[QubitId] = set()
        self._open_ands: Dict[QubitId, frozenset] = {}
        self._live_ancilla = 0
        self._frozen = False

    # -------------------------------------------------------------------------
    # queries

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def is_primitive(self) -> bool:
        return not any(g.kind.is_macro for g in self.gates)

    @property
    def cbits(self) -> Set[str]:
        return set(self._cbits)

    @property
    def ancilla_qubits(self) -> Set[QubitId]:
        """Qubits that were ever part of an ancilla-role register."""
        return set(self._ancilla_qubits)

    @property
    def initial_states(self) -> Dict[QubitId, InitialState]:
        return {q: self.initial_state(q) for q in range(self.qubit_count)}

    def initial_state(self, qubit: QubitId) -> InitialState:
        return self._initial.get(qubit, InitialState.ZERO)

    def register(self, name: str) -> Register:
        try:
            return self.registers[name]
        except KeyError:
            raise RegisterError(f"no live register named '{name}'") from None

    def owner(self, qubit: QubitId) -> Optional[str]:
        return self._owner.get(qubit)

    def open_and(self, target: QubitId) -> Optional[frozenset]:
        """Controls of the TemporaryAND currently holding `target`, if any."""
        return self._open_ands.get(target)

    def is_unused(self, qubit: QubitId) -> bool:
        return qubit not in self._touched

    def is_known_zero(self, qubit: QubitId) -> bool:
        """True if the qubit is untouched and starts in |0>, or was released since its last use."""
        if qubit in self._cleared:
            return True
        return qubit not in self._touched and self.initial_state(qubit) is InitialState.ZERO

    def fresh_name(self, prefix: str) -> str:
        k = 0
        while f"{prefix}{k}" in self._names:
            k += 1
        return f"{prefix}{k}"

    def __len__(self) -> int:
        return len(self.gates)

    def __repr__(self) -> str:
        return (f"Circuit(qubits={self.qubit_count}, gates={len(self.gates)}, "
                f"registers={list(self.registers)}, mode={self.magic_mode.value})")

    # -------------------------------------------------------------------------
    # construction

    def _check_mutable(self) -> None:
        if self._frozen:
            raise CircuitError("circuit is frozen")

    def set_initial_state(self, qubit: QubitId, state: InitialState) -> None:
        """Declare the initial state of a qubit that no gate has touched yet."""
        self._check_mutable()
        if not 0 <= qubit < self.qubit_count:
            raise GateError(f"qubit {qubit} out of range (qubit_count={self.qubit_count})")
        if qubit in self._touched:
            raise CircuitError(f"qubit {qubit} already used; initial state is fixed")
        state = InitialState(state)
        if state is InitialState.ZERO:
            self._initial.pop(qubit, None)
        else:
            self._initial[qubit] = state

    def _grow(self, count: int) -> List[QubitId]:
        if self.max_qubits is not None and self.qubit_count + count > self.max_qubits:
            raise AncillaError(
                f"ancilla pool exhausted: need {count} more qubit(s), "
                f"limit {self.max_qubits}, have {self.qubit_count}"
            )
        start = self.qubit_count
        self.qubit_count += count
        return list(range(start, start + count))

    def alloc_register(self, name: str, width: int, role: RegisterRole) -> Register:
        """
        Allocate a register of fresh or recycled qubits.

        Recycled (released) qubits are reused lowest-index first for roles
        that start in |0>. Data roles always take fresh qubits, and so do
        magic ancillas in INITIAL_STATE mode because a released qubit is |0>,
        not |A>.
        """
        self._check_mutable()
        role = RegisterRole(role)
        if width < 1:
            raise RegisterError(f"register '{name}' must have width >= 1, got {width}")
        if name in self._names:
            raise RegisterError(f"duplicate register name '{name}'")

        fresh_only = role.is_data or (
            role is RegisterRole.ANCILLA_MAGIC and self.magic_mode is MagicMode.INITIAL_STATE
        )
        reused: List[QubitId] = []
        if not fresh_only:
            reused = self._recycled[:width]
        fresh = self._grow(width - len(reused))
        del self._recycled[:len(reused)]

        if role is RegisterRole.ANCILLA_MAGIC and self.magic_mode is MagicMode.INITIAL_STATE:
            initial = InitialState.MAGIC_A
        elif role.is_data:
            initial = InitialState.DATA
        else:
            initial = InitialState.ZERO
        for q in fresh:
            if initial is not InitialState.ZERO:
                self._initial[q] = initial

        register = Register(name, tuple(reused + fresh), role)
        self.registers[name] = register
        self._names.add(name)
        for q in register.qubits:
            self._owner[q] = name
        if role.is_ancilla:
            self._ancilla_qubits.update(register.qubits)
            self._live_ancilla += register.width
            self.ancilla_high_water = max(self.ancilla_high_water, self._live_ancilla)
        logger.debug("alloc %s %s %s (reused %d)", name, role.value, register.qubits, len(reused))
        return register

    def declare_register(self, register: Register) -> None:
        """Enter a register over existing qubits in the table (used by the text parser)."""
        self._check_mutable()
        if register.name in self._names:
            raise RegisterError(f"duplicate register name '{register.name}'")
        for q in register.qubits:
            if q >= self.qubit_count:
                raise RegisterError(f"register '{register.name}' qubit {q} out of range")
            if q in self._owner:
                raise RegisterError(f"qubit {q} already belongs to '{self._owner[q]}'")
        self.registers[register.name] = register
        self._names.add(register.name)
        for q in register.qubits:
            self._owner[q] = register.name
        if register.role.is_ancilla:
            self._ancilla_qubits.update(register.qubits)

    def release_ancilla(self, register: Register) -> None:
        """Return an ancilla register's qubits (now |0>) to the recycle pool."""
        self._check_mutable()
        if not register.role.is_ancilla:
            raise AncillaError(f"cannot release '{register.name}': role {register.role.value} is not an ancilla")
        if self.registers.get(register.name) != register:
            raise AncillaError(f"register '{register.name}' is not live (double release?)")
        del self.registers[register.name]
        for q in register.qubits:
            self._owner.pop(q, None)
            bisect.insort(self._recycled, q)
            self._cleared.add(q)
        self._live_ancilla -= register.width
        self.releases.append(Release(len(self.gates), register.qubits, register.name))

    def append(self, gate: Gate) -> None:
        """Append a well-formed gate; sequence order is execution order."""
        self._check_mutable()
        for q in gate.operands:
            if q >= self.qubit_count:
                raise GateError(f"{gate}: operand {q} out of range (qubit_count={self.qubit_count})")
        recycled = set(self._recycled).intersection(gate.operands)
        if recycled:
            raise GateError(f"{gate}: qubit(s) {sorted(recycled)} were released and are not live")
        if gate.kind is GateKind.MEASURE_X:
            if gate.cbit in self._cbits:
                raise GateError(f"{gate}: classical bit '{gate.cbit}' already produced")
            self._cbits.add(gate.cbit)
        elif gate.kind is GateKind.CLASSICALLY_CONTROLLED_CZ and gate.cbit not in self._cbits:
            raise GateError(f"{gate}: classical bit '{gate.cbit}' not produced by an earlier MeasureX")
        elif gate.kind is GateKind.TEMPORARY_AND:
            self._open_ands[gate.operands[2]] = frozenset(gate.operands[:2])
        elif gate.kind is GateKind.UNCOMPUTE_AND:
            self._open_ands.pop(gate.operands[2], None)
        self._touched.update(gate.operands)
        self._cleared.difference_update(gate.operands)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for gate in gates:
            self.append(gate)

    def freeze(self) -> "Circuit":
        self._frozen = True
        return self

    def copy(self) -> "Circuit":
        """Unfrozen copy sharing the immutable gates and registers."""
        other = Circuit(self.qubit_count, self.magic_mode, self.max_qubits)
        other.gates = list(self.gates)
        other.registers = dict(self.registers)
        other.releases = list(self.releases)
        other.blocks = list(self.blocks)
        other.ancilla_high_water = self.ancilla_high_water
        other._initial = dict(self._initial)
        other._names = set(self._names)
        other._owner = dict(self._owner)
        other._recycled = list(self._recycled)
        other._touched = set(self._touched)
        other._cleared = set(self._cleared)
        other._cbits = set(self._cbits)
        other._ancilla_qubits = set(self._ancilla_qubits)
        other._open_ands = dict(self._open_ands)
        other._live_ancilla = self._live_ancilla
        return other


# =============================================================================
# MODULE-LEVEL OPERATIONS
# =============================================================================

def new_circuit(qubit_count: int = 0, magic_mode: MagicMode = MagicMode.INITIAL_STATE,
                max_qubits: Optional[int] = None) -> Circuit:
    """
    Create an empty circuit of `qubit_count` zero-state qubits.

    Example:
        >>> c = new_circuit(3)
        >>> c.qubit_count, len(c.gates)
        (3, 0)
    """
    return Circuit(qubit_count, magic_mode, max_qubits)


def alloc_register(circuit: Circuit, name: str, width: int, role: RegisterRole) -> Register:
    return circuit.alloc_register(name, width, role)


def release_ancilla(circuit: Circuit, register: Register) -> None:
    circuit.release_ancilla(register)


def append_gate(circuit: Circuit, gate: Gate) -> None:
    circuit.append(gate)


# =============================================================================
# MACRO EXPANSION
# =============================================================================

def and_network(a: QubitId, b: QubitId, t: QubitId, prepare: bool = False) -> List[Gate]:
    """
    Clifford+T network of the temporary logical-AND, left to right.

    The target must hold |A>; with prepare=True it must hold |0> and the
    H, T preparing |A> are emitted first.
    """
    gates = [Gate(GateKind.H, (t,)), Gate(GateKind.T, (t,))] if prepare else []
    gates += [
        Gate(GateKind.CNOT, (a, t)),
        Gate(GateKind.CNOT, (b, t)),
        Gate(GateKind.CNOT, (t, a)),
        Gate(GateKind.CNOT, (t, b)),
        Gate(GateKind.TDG, (a,)),
        Gate(GateKind.TDG, (b,)),
        Gate(GateKind.T, (t,)),
        Gate(GateKind.CNOT, (t, a)),
        Gate(GateKind.CNOT, (t, b)),
        Gate(GateKind.H, (t,)),
        Gate(GateKind.S, (t,)),
    ]
    return gates


def uncompute_network(a: QubitId, b: QubitId, t: QubitId, cbit: str) -> List[Gate]:
    """X-basis measurement of the target, then CZ on the controls if it read 1."""
    return [
        Gate(GateKind.MEASURE_X, (t,), cbit),
        Gate(GateKind.CLASSICALLY_CONTROLLED_CZ, (a, b), cbit),
    ]


class _CbitNames:
    def __init__(self, taken: Set[str]):
        self._taken = set(taken)
        self._next = 0

    def __call__(self) -> str:
        while f"m{self._next}" in self._taken:
            self._next += 1
        name = f"m{self._next}"
        self._taken.add(name)
        return name


def expand_macros(circuit: Circuit) -> Circuit:
    """
    Rewrite macro gates into primitive Clifford+T gates.

    Toffoli gates borrow a scratch ancilla added to the expanded circuit:
    a fresh |A> qubit per Toffoli in INITIAL_STATE mode; in PREPARED mode a
    single fresh |0> qubit, appended once and reused by every Toffoli.
    Release positions and block spans are remapped to the expanded gate
    list. An already-primitive circuit comes back as an equal copy.

    Raises:
        MagicStateError: INITIAL_STATE mode and a TemporaryAND target is not
            a |A> qubit on its first use
    """
    if circuit.is_primitive:
        return circuit.copy().freeze()

    strict = circuit.magic_mode is MagicMode.INITIAL_STATE
    prepare = not strict
    out = circuit.copy()
    out._frozen = False
    out.gates = []
    out.releases = []
    out._cbits = set(circuit.cbits)
    names = _CbitNames(out._cbits)

    seen: Set[QubitId] = set()
    scratch: List[QubitId] = []
    new_index: List[int] = []
    scratch_releases: List[Release] = []

    for gate in circuit.gates:
        new_index.append(len(out.gates))
        ops = gate.operands
        if gate.kind is GateKind.TEMPORARY_AND:
            a, b, t = ops
            if strict and (circuit.initial_state(t) is not InitialState.MAGIC_A or t in seen):
                raise MagicStateError(
                    f"TemporaryAND target {t} is not an unused magic_A qubit "
                    f"(initial state {circuit.initial_state(t).value})"
                )
            out.gates.extend(and_network(a, b, t, prepare))
        elif gate.kind is GateKind.UNCOMPUTE_AND:
            a, b, t = ops
            cbit = names()
            out.gates.extend(uncompute_network(a, b, t, cbit))
        elif gate.kind is GateKind.TOFFOLI:
            a, b, z = ops
            if strict or not scratch:
                (s,) = out._grow(1)
                scratch.append(s)
                if strict:
                    out._initial[s] = InitialState.MAGIC_A
            s = scratch[-1]
            cbit = names()
            out.gates.extend(and_network(a, b, s, prepare))
            out.gates.append(Gate(GateKind.CNOT, (s, z)))
            out.gates.extend(uncompute_network(a, b, s, cbit))
            scratch_releases.append(Release(len(out.gates), (s,), "expansion_scratch"))
        else:
            out.gates.append(gate)
        out._cbits.update(g.cbit for g in out.gates[new_index[-1]:] if g.kind is GateKind.MEASURE_X)
        seen.update(ops)
    new_index.append(len(out.gates))

    out.releases = sorted(
        [Release(new_index[r.position], r.qubits, r.register) for r in circuit.releases]
        + scratch_releases,
        key=lambda r: r.position,
    )
    out.blocks = [block.remapped(new_index) for block in circuit.blocks]
    if scratch:
        name = out.fresh_name("expansion_scratch")
        out.registers[name] = Register(name, tuple(scratch), RegisterRole.ANCILLA_MAGIC)
        out._names.add(name)
        out._ancilla_qubits.update(scratch)
        out.ancilla_high_water = circuit.ancilla_high_water + 1
    out._touched = set(range(out.qubit_count)) & (circuit._touched | set(scratch))
    out._open_ands = {}
    logger.debug("expanded %d macro gates into %d primitives", len(circuit.gates), len(out.gates))
    return out.freeze()
