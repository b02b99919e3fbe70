#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
text_format.py - Canonical circuit text format

    # comment
    qubits 7
    reg A color 0 1
    reg B output 2 3
    init magic_A 4
    mode initial_state
    ancillas 1
    block adder 0 9 2 2
    TemporaryAND 0 2 4
    CNOT 4 5
    release carry0 4
    MeasureX 4 @m0
    ClassicallyControlledCZ 0 2 @m0

Header lines come in the order shown; `release <register> <qubits...>`
lines sit in the gate stream at the position they were recorded. Block
lines are `block <kind> <start> <stop> <operand widths...>`. `ancillas`
is the peak number of live ancilla qubits; without it the parser rebuilds
the peak from the ancilla `reg` lines and the `release` lines.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pyparsing as pp

from arithmetic.blocks import ArithmeticBlock, BlockKind
from circuits.core import (
    Circuit,
    Gate,
    GateKind,
    InitialState,
    MagicMode,
    Register,
    RegisterRole,
    Release,
)
from utils.errors import CircuitParseError, QBilerpError

logger = logging.getLogger(__name__)


# =============================================================================
# GRAMMAR
# =============================================================================

def _keywords(values) -> pp.ParserElement:
    # longest first so "T" never shadows "Tdg" or "Toffoli"
    return pp.MatchFirst([pp.Keyword(v) for v in sorted(values, key=len, reverse=True)])


_integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
_qubit_list = pp.Group(pp.OneOrMore(_integer))

_QUBITS = pp.Keyword("qubits") + _integer("count")
_REG = pp.Keyword("reg") + _ident("name") + _keywords(r.value for r in RegisterRole)("role") + _qubit_list("qubits")
_INIT = pp.Keyword("init") + _keywords(s.value for s in InitialState)("state") + _qubit_list("qubits")
_MODE = pp.Keyword("mode") + _keywords(m.value for m in MagicMode)("mode")
_ANCILLAS = pp.Keyword("ancillas") + _integer("peak")
_BLOCK = (pp.Keyword("block") + _keywords(k.value for k in BlockKind)("kind")
          + _integer("start") + _integer("stop") + _qubit_list("widths"))
_RELEASE = pp.Keyword("release") + _ident("name") + _qubit_list("qubits")
_GATE = (_keywords(k.value for k in GateKind)("kind") + _qubit_list("operands")
         + pp.Optional(pp.Suppress("@") + _ident("cbit")))

_STATEMENT = (
    _QUBITS("qubits_stmt") | _REG("reg_stmt") | _INIT("init_stmt") | _MODE("mode_stmt")
    | _ANCILLAS("ancillas_stmt") | _BLOCK("block_stmt") | _RELEASE("release_stmt") | _GATE("gate_stmt")
) + pp.StringEnd()
_STATEMENT.ignore(pp.python_style_comment)


# =============================================================================
# EMIT
# =============================================================================

def emit_circuit(circuit: Circuit) -> str:
    """Render a circuit in canonical text form."""
    lines = [f"qubits {circuit.qubit_count}"]
    for reg in circuit.registers.values():
        lines.append(f"reg {reg.name} {reg.role.value} " + " ".join(map(str, reg.qubits)))
    for state in (InitialState.MAGIC_A, InitialState.DATA):
        qubits = [q for q in range(circuit.qubit_count) if circuit.initial_state(q) is state]
        if qubits:
            lines.append(f"init {state.value} " + " ".join(map(str, qubits)))
    lines.append(f"mode {circuit.magic_mode.value}")
    lines.append(f"ancillas {circuit.ancilla_high_water}")
    for block in circuit.blocks:
        start, stop = block.gate_span
        widths = " ".join(map(str, block.operand_widths or (block.operand_width,)))
        lines.append(f"block {block.kind.value} {start} {stop} {widths}")

    releases = sorted(circuit.releases, key=lambda r: r.position)
    r = 0
    for position, gate in enumerate(circuit.gates):
        while r < len(releases) and releases[r].position == position:
            lines.append(_release_line(releases[r]))
            r += 1
        lines.append(str(gate))
    lines.extend(_release_line(rel) for rel in releases[r:])
    return "\n".join(lines) + "\n"


def _release_line(release: Release) -> str:
    return f"release {release.register} " + " ".join(map(str, release.qubits))


def save_circuit(circuit: Circuit, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(emit_circuit(circuit), encoding="utf-8")
    logger.info("wrote %d gates to %s", len(circuit.gates), path)
    return path


# =============================================================================
# PARSE
# =============================================================================

def parse_circuit(text: str) -> Circuit:
    """
    Parse canonical (or hand-written) circuit text.

    The result is frozen. Gate-level checks of Circuit.append apply, so an
    unknown classical bit or an out-of-range operand is a parse error.

    Raises:
        CircuitParseError: syntax or semantic error, with its line number
    """
    circuit: Circuit = None
    blocks: List[ArithmeticBlock] = []
    releases: List[Release] = []
    peak: Optional[int] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tokens = _STATEMENT.parse_string(line, parse_all=True)
        except pp.ParseBaseException as exc:
            raise CircuitParseError(f"cannot parse '{line}': {exc.msg}", line=lineno) from None

        try:
            if "qubits_stmt" in tokens:
                if circuit is not None:
                    raise CircuitParseError("duplicate 'qubits' header", line=lineno)
                circuit = Circuit(tokens["count"])
                continue
            if circuit is None:
                raise CircuitParseError("missing 'qubits' header", line=lineno)

            if "reg_stmt" in tokens:
                circuit.declare_register(Register(tokens["name"], tuple(tokens["qubits"]), RegisterRole(tokens["role"])))
            elif "init_stmt" in tokens:
                for q in tokens["qubits"]:
                    circuit.set_initial_state(q, InitialState(tokens["state"]))
            elif "mode_stmt" in tokens:
                circuit.magic_mode = MagicMode(tokens["mode"])
            elif "ancillas_stmt" in tokens:
                peak = tokens["peak"]
            elif "block_stmt" in tokens:
                widths = tuple(tokens["widths"])
                blocks.append(ArithmeticBlock(
                    kind=BlockKind(tokens["kind"]),
                    operand_width=max(widths),
                    input_registers=(),
                    output_register=None,
                    gate_span=(tokens["start"], tokens["stop"]),
                    operand_widths=widths,
                ))
            elif "release_stmt" in tokens:
                releases.append(Release(len(circuit.gates), tuple(tokens["qubits"]), tokens["name"]))
            else:
                circuit.append(Gate(GateKind(tokens["kind"]), tuple(tokens["operands"]), tokens.get("cbit")))
        except CircuitParseError:
            raise
        except QBilerpError as exc:
            raise CircuitParseError(str(exc), line=lineno) from exc

    if circuit is None:
        raise CircuitParseError("empty circuit text: missing 'qubits' header")
    for block in blocks:
        if not 0 <= block.gate_span[0] <= block.gate_span[1] <= len(circuit.gates):
            raise CircuitParseError(f"block span {block.gate_span} outside the gate list")
    circuit.blocks = blocks
    circuit.releases = releases
    circuit.ancilla_high_water = _ancilla_peak(circuit) if peak is None else peak
    return circuit.freeze()


def _ancilla_peak(circuit: Circuit) -> int:
    """
    Peak live ancilla qubits, rebuilt from register and release records.

    A register counts as live from the first gate touching one of its qubits
    (after that qubit's previous release) until its release, or to the end
    of the circuit for ancilla registers still declared.
    """
    spans: List[Tuple[int, int, int]] = []
    released_at: Dict[int, int] = {}

    def first_touch(qubits: Tuple[int, ...], end: int) -> int:
        since = max((released_at.get(q, 0) for q in qubits), default=0)
        wanted = set(qubits)
        for position in range(since, end):
            if wanted.intersection(circuit.gates[position].operands):
                return position
        return end

    for release in sorted(circuit.releases, key=lambda r: r.position):
        spans.append((first_touch(release.qubits, release.position), release.position, len(release.qubits)))
        for q in release.qubits:
            released_at[q] = release.position
    end = len(circuit.gates)
    for reg in circuit.registers.values():
        if reg.role.is_ancilla:
            spans.append((first_touch(reg.qubits, end), end, reg.width))

    events: List[Tuple[int, int]] = []
    peak = 0
    for start, stop, width in spans:
        if start >= stop:
            peak = max(peak, width)
            continue
        events.append((start, width))
        events.append((stop, -width))
    live = 0
    # releases at a position happen before the gate there
    for _, delta in sorted(events, key=lambda e: (e[0], e[1])):
        live += delta
        peak = max(peak, live)
    return peak


def load_circuit(path: Union[str, Path]) -> Circuit:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CircuitParseError(f"cannot read {path}: {exc}") from exc
    return parse_circuit(text)
