#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
cli.py - Command-line front end

    python cli.py build adder --n 4 -o adder.txt
    python cli.py build bilerp --mode down --m 2 --n 1 --q 4 -o bilerp.txt
    python cli.py count bilerp.txt --n 1 --json report.json
    python cli.py compare --n-range 1..8 --measure
    python cli.py simulate toffoli.txt --set a=1 --set b=1
    python cli.py interpolate in.pgm out.pgm --mode down --n 1 --backend both

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
Tables go to stdout, diagnostics to stderr, JSON behind --json.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Dict, List, Optional, Sequence

from analysis.export import write_json, write_text
from analysis.reports import (
    RunReport,
    circuit_report,
    comparison_rows,
    format_comparison_table,
    format_report_table,
    formula_values,
    improvement_figures,
)
from analysis.resources import ResourceReport, arithmetic_width, count_resources
from arithmetic.blocks import build_adder, build_conditional_adder, build_subtractor
from arithmetic.multiplier import build_multiplier
from circuits.core import Circuit, MagicMode, RegisterRole
from circuits.gadgets import emit_temporary_and, emit_toffoli, emit_toffoli_macro, emit_uncompute_and
from circuits.text_format import load_circuit, save_circuit
from config.defaults import load_settings
from config.presets import load_preset, preset_description
from imaging.pgm import load_pgm, save_pgm
from interpolation.bilerp import build_interpolation, make_spec
from interpolation.driver import Backend, run_interpolation
from simulation.models import BranchPolicy, ClassicalState
from simulation.permutation import run_permutation
from simulation.statevector import run_statevector
from utils.errors import QBilerpError, VerificationError
from utils.logging_setup import configure_logging
from validation.rules import check_report, run_circuit_checks

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2

BUILD_KINDS = ("and", "uncompute", "toffoli", "toffoli-macro", "adder", "conditional-adder",
               "subtractor", "multiplier", "bilerp")


class UsageError(Exception):
    """Bad command-line usage; exits with code 1."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# =============================================================================
# CIRCUIT CATALOGUE
# =============================================================================

def _gadget_circuit(kind: str, magic_mode: MagicMode) -> Circuit:
    circuit = Circuit(magic_mode=magic_mode)
    a = circuit.alloc_register("a", 1, RegisterRole.COLOR)
    b = circuit.alloc_register("b", 1, RegisterRole.COLOR)
    if kind == "and":
        t = circuit.alloc_register("t", 1, RegisterRole.ANCILLA_MAGIC)
        emit_temporary_and(circuit, a[0], b[0], t[0])
    elif kind == "uncompute":
        # t arrives holding a AND b
        t = circuit.alloc_register("t", 1, RegisterRole.OUTPUT)
        emit_uncompute_and(circuit, a[0], b[0], t[0], verify=False)
    elif kind == "toffoli-macro":
        z = circuit.alloc_register("z", 1, RegisterRole.OUTPUT)
        emit_toffoli_macro(circuit, a[0], b[0], z[0])
    else:
        z = circuit.alloc_register("z", 1, RegisterRole.OUTPUT)
        emit_toffoli(circuit, a[0], b[0], z[0])
    return circuit


def build_named_circuit(kind: str, n: Optional[int] = None, width_b: Optional[int] = None,
                        magic_mode: MagicMode = MagicMode.INITIAL_STATE) -> Circuit:
    """Stand-alone circuit for one gadget or arithmetic block."""
    if kind in ("and", "uncompute", "toffoli", "toffoli-macro"):
        return _gadget_circuit(kind, magic_mode).freeze()
    if n is None or n < 1:
        raise UsageError(f"build {kind} needs --n >= 1")
    circuit = Circuit(magic_mode=magic_mode)
    if kind == "multiplier":
        b_width = width_b or n
        if b_width < 1:
            raise UsageError("--width-b must be >= 1")
        a = circuit.alloc_register("a", n, RegisterRole.COLOR)
        b = circuit.alloc_register("b", b_width, RegisterRole.COLOR)
        product = circuit.alloc_register("product", n + b_width, RegisterRole.OUTPUT)
        build_multiplier(circuit, a, b, product)
        return circuit.freeze()
    ctrl = circuit.alloc_register("ctrl", 1, RegisterRole.COLOR) if kind == "conditional-adder" else None
    A = circuit.alloc_register("A", n, RegisterRole.COLOR)
    B = circuit.alloc_register("B", n, RegisterRole.OUTPUT)
    if kind == "adder":
        build_adder(circuit, A, B)
    elif kind == "conditional-adder":
        build_conditional_adder(circuit, ctrl[0], A, B)
    elif kind == "subtractor":
        build_subtractor(circuit, A, B)
    else:
        raise UsageError(f"unknown circuit kind {kind!r}")
    return circuit.freeze()


# =============================================================================
# COMMANDS
# =============================================================================

def _settings(args: argparse.Namespace, extra: Optional[Dict] = None) -> Dict:
    overrides = {"MAGIC_MODE": getattr(args, "magic_mode", None), "LOG_LEVEL": args.log_level}
    overrides.update(extra or {})
    settings = load_settings(overrides)
    configure_logging(settings["LOG_LEVEL"])
    return settings


def cmd_build(args: argparse.Namespace) -> int:
    settings = _settings(args)
    magic_mode = MagicMode(settings["MAGIC_MODE"])
    start = time.perf_counter()
    n = None
    spec_echo: Dict = {"kind": args.kind}
    if args.kind == "bilerp":
        if None in (args.mode, args.m, args.n, args.q):
            raise UsageError("build bilerp needs --mode, --m, --n and --q")
        spec = make_spec(args.mode, args.m, args.n, args.q)
        circuit, _ = build_interpolation(spec, magic_mode)
        n = spec.n
        spec_echo.update(spec.model_dump(mode="json"))
    else:
        circuit = build_named_circuit(args.kind, args.n, args.width_b, magic_mode)
        spec_echo["n"] = args.n
    save_circuit(circuit, args.output)
    command = "build_bilerp" if args.kind == "bilerp" else "build"
    report = circuit_report(command, circuit, n, spec_echo, timing_seconds=time.perf_counter() - start)
    print(format_report_table(report))
    if args.json:
        write_json(report, args.json)
    logger.info("built %s into %s", args.kind, args.output)

    failed = False
    for name, (ok, detail) in run_circuit_checks(circuit, interpolation=args.kind == "bilerp").items():
        if not ok:
            failed = True
            for problem in detail if isinstance(detail, list) else [detail]:
                print(f"check {name} failed: {problem}", file=sys.stderr)
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    _settings(args)
    start = time.perf_counter()
    circuit = load_circuit(args.circuit)
    report = circuit_report("count", circuit, args.n, {"path": str(args.circuit)},
                            timing_seconds=time.perf_counter() - start)
    print(format_report_table(report))
    if args.json:
        write_json(report, args.json)
    ok, problems = check_report(report)
    for problem in problems:
        print(f"check failed: {problem}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFICATION


def _parse_n_range(text: str) -> List[int]:
    try:
        lo, hi = (int(part) for part in text.split(".."))
    except ValueError:
        raise UsageError(f"--n-range expects LO..HI, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"--n-range {text!r} must satisfy 1 <= LO <= HI")
    return list(range(lo, hi + 1))


def cmd_compare(args: argparse.Namespace) -> int:
    settings = _settings(args)
    n_values = args.n_values or (_parse_n_range(args.n_range) if args.n_range else [1, 2, 4, 8])
    if min(n_values) < 1:
        raise UsageError("n values must be >= 1")
    measured: Dict[int, ResourceReport] = {}
    widths: Dict[int, int] = {}
    if args.measure:
        for n in n_values:
            spec = make_spec("down", n, n, args.q)
            circuit, _ = build_interpolation(spec, MagicMode(settings["MAGIC_MODE"]))
            measured[n] = count_resources(circuit)
            widths[n] = arithmetic_width(circuit)
            logger.info("measured n=%d: %d T-type", n, measured[n].t_type_count)
    rows = comparison_rows(n_values, measured, widths)
    table = format_comparison_table(rows)
    print(table)
    if args.json:
        write_json(rows, args.json)
    if args.table:
        write_text(table, args.table)
    over = [r.n for r in rows if r.measured is not None and r.bound_at_width is not None and r.measured > r.bound_at_width]
    return EXIT_VERIFICATION if over else EXIT_OK


def _input_state(circuit: Circuit, args: argparse.Namespace) -> ClassicalState:
    if args.input:
        state = ClassicalState.from_ket(args.input)
        if state.qubit_count != circuit.qubit_count:
            raise UsageError(f"--input has {state.qubit_count} bits, circuit has {circuit.qubit_count} qubits")
        return state
    values = {}
    for item in args.set or ():
        name, _, value = item.partition("=")
        try:
            values[name] = int(value, 0)
        except ValueError:
            raise UsageError(f"--set expects NAME=VALUE, got {item!r}") from None
    return ClassicalState.from_registers(circuit, values)


def cmd_simulate(args: argparse.Namespace) -> int:
    settings = _settings(args, {"BRANCH_POLICY": args.branch_policy, "SEED": args.seed,
                                "STATEVECTOR_CAP": args.cap})
    circuit = load_circuit(args.circuit)
    state = _input_state(circuit, args)
    if args.backend == "permutation":
        outcomes = [run_permutation(circuit, state)]
        records = [{"basis_state": outcomes[0].to_ket()}]
        reads = [{name: outcomes[0].read(reg) for name, reg in circuit.registers.items()}]
    else:
        policy = (BranchPolicy.sample(settings["SEED"]) if settings["BRANCH_POLICY"] == "sample"
                  else BranchPolicy.enumerate_all())
        outcomes = run_statevector(circuit, state, policy, cap=settings["STATEVECTOR_CAP"],
                                   norm_tolerance=settings["NORM_TOLERANCE"])
        records = [o.to_dict() for o in outcomes]
        reads = []
        for o in outcomes:
            try:
                reads.append({name: o.read(reg) for name, reg in circuit.registers.items()})
            except QBilerpError:
                reads.append({})
    for i, (record, values) in enumerate(zip(records, reads)):
        print(f"branch {i}: " + ", ".join(f"{k}={v}" for k, v in values.items()))
        print(f"  {record.get('basis_state', 'superposition')}  p={record.get('probability', 1.0):.6f}")
    if args.json:
        write_json({"backend": args.backend, "input": state.to_ket(),
                    "outcomes": [dict(r, registers=v) for r, v in zip(records, reads)]}, args.json)
    return EXIT_OK


def cmd_interpolate(args: argparse.Namespace) -> int:
    preset = load_preset(args.preset) if args.preset else {}
    flags = {"MODE": args.mode, "N": args.n, "BACKEND": args.backend, "BATCH_SIZE": args.batch_size}
    if args.subpixel:
        flags["SUBPIXEL_Y"], flags["SUBPIXEL_X"] = args.subpixel
    image = load_pgm(args.input)
    overrides = dict(preset)
    overrides.update({k: v for k, v in flags.items() if v is not None})
    overrides.update({"M": image.m, "Q": image.q})
    settings = _settings(args, overrides)
    if args.preset:
        print(f"preset {args.preset}: {preset_description(args.preset)}")

    spec = make_spec(settings["MODE"], settings["M"], settings["N"], settings["Q"])
    start = time.perf_counter()
    run = run_interpolation(image, spec, Backend(settings["BACKEND"]),
                            subpixel=(settings["SUBPIXEL_Y"], settings["SUBPIXEL_X"]),
                            batch_size=settings["BATCH_SIZE"],
                            magic_mode=MagicMode(settings["MAGIC_MODE"]))
    elapsed = time.perf_counter() - start
    save_pgm(run.image, args.output)

    if run.circuit is not None:
        report = circuit_report("interpolate", run.circuit, spec.n, spec.model_dump(mode="json"),
                                agreement=run.agreement, timing_seconds=elapsed)
    else:
        report = RunReport(command="interpolate", spec=spec.model_dump(mode="json"),
                           formulas=formula_values(spec.n), improvement=improvement_figures(spec.n),
                           timing_seconds=elapsed)
    print(format_report_table(report))
    if args.json:
        write_json(report, args.json)
    if run.mismatch is not None:
        y, x, expected, got = run.mismatch
        print(f"backend disagreement at pixel ({y}, {x}): oracle {expected}, circuit {got}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qbilerp", description="Clifford+T bilinear interpolation toolkit")
    common = _ArgumentParser(add_help=False)
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)
    common.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    magic = _ArgumentParser(add_help=False)
    magic.add_argument("--magic-mode", choices=[m.value for m in MagicMode], default=None)

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("build", parents=[common, magic], help="write a circuit in the text format")
    p.add_argument("kind", choices=BUILD_KINDS)
    p.add_argument("--n", type=int, help="operand width, or the scale exponent for bilerp")
    p.add_argument("--width-b", type=int, help="second multiplier operand width (default --n)")
    p.add_argument("--mode", choices=["down", "up"])
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", parents=[common], help="resource report of a circuit file")
    p.add_argument("circuit")
    p.add_argument("--n", type=int, help="scale exponent for the formula columns")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("compare", parents=[common, magic], help="proposed versus prior T-counts")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n-values", type=int, nargs="+")
    group.add_argument("--n-range", help="inclusive range LO..HI")
    p.add_argument("--measure", action="store_true", help="build each circuit (m = n) and add measured columns")
    p.add_argument("--q", type=int, default=4, help="colour bits of measured circuits")
    p.add_argument("--table", metavar="PATH", help="also write the text table here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", parents=[common], help="run a circuit file on one basis input")
    p.add_argument("circuit")
    p.add_argument("--backend", choices=["statevector", "permutation"], default="statevector")
    p.add_argument("--input", help="ket over all qubits, qubit 0 rightmost")
    p.add_argument("--set", action="append", metavar="NAME=VALUE", help="register value (repeatable)")
    p.add_argument("--branch-policy", choices=["enumerate_all", "sample"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap", type=int, default=None, help="statevector qubit cap")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("interpolate", parents=[common, magic], help="scale a PGM image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", choices=["down", "up"])
    p.add_argument("--n", type=int)
    p.add_argument("--backend", choices=[b.value for b in Backend])
    p.add_argument("--preset")
    p.add_argument("--subpixel", type=int, nargs=2, metavar=("Y", "X"))
    p.add_argument("--batch-size", type=int)
    p.set_defaults(func=cmd_interpolate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logger.info("command %s started", args.command)
        code = args.func(args)
        logger.info("command %s finished with exit code %d", args.command, code)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (QBilerpError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
