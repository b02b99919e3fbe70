#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
rules.py - Cross-checks of settings, circuits and reports

Every rule reports instead of raising: it returns (is_valid, message) or
(is_valid, messages) so callers can collect all problems at once.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, List, Optional, Tuple

from analysis.cost_model import DEFAULT_COST_MODEL, Variant, composed_tcount, formula_proposed_tcount
from analysis.reports import RunReport
from analysis.resources import BlockCensus, block_census, block_rows, count_macro_resources, count_resources
from circuits.core import Circuit

logger = logging.getLogger(__name__)

INTERPOLATION_CENSUS = BlockCensus(adders=3, subtractors=2, multipliers=8, dividers=0)


def check_settings(settings: Dict[str, Any]) -> Tuple[bool, Dict[str, str]]:
    """
    Rules spanning several parameters.

    Example:
        >>> check_settings({"MODE": "down", "M": 1, "N": 2})
        (False, {'N': 'scale-down needs n <= m (n=2, m=1)'})
    """
    errors: Dict[str, str] = {}
    mode, m, n = settings.get("MODE"), settings.get("M"), settings.get("N")
    if mode == "down" and m is not None and n is not None and n > m:
        errors["N"] = f"scale-down needs n <= m (n={n}, m={m})"
    if n is not None:
        for name in ("SUBPIXEL_Y", "SUBPIXEL_X"):
            value = settings.get(name)
            if value and mode == "up":
                errors[name] = "sub-pixel offsets apply to scale-down only"
            elif value is not None and value >= 1 << n:
                errors[name] = f"offset {value} must be below 2^n = {1 << n}"
    return len(errors) == 0, errors


def check_block_bounds(circuit: Circuit) -> Tuple[bool, List[str]]:
    """Every recorded block's measured T-type count is within its stated formula."""
    problems = [
        f"block {row['index']} ({row['kind']}, widths {row['widths']}): "
        f"measured {row['measured_t']} > stated {row['stated_t']}"
        for row in block_rows(circuit)
        if not row["within_bound"]
    ]
    return len(problems) == 0, problems


def check_census(circuit: Circuit, expected: BlockCensus = INTERPOLATION_CENSUS) -> Tuple[bool, Optional[str]]:
    census = block_census(circuit)
    if census != expected:
        return False, f"block census {census.model_dump()} differs from {expected.model_dump()}"
    return True, None


def check_composition_identity(n_values: Iterable[int] = range(1, 65)) -> Tuple[bool, Optional[str]]:
    """Summed block formulas equal the closed form 64n^2 - 12n - 8."""
    for n in n_values:
        composed = composed_tcount(DEFAULT_COST_MODEL, Variant.PROPOSED, n)
        closed = formula_proposed_tcount(n)
        if composed != closed:
            return False, f"n={n}: composed {composed} != closed form {closed}"
    return True, None


def check_expansion_invariance(circuit: Circuit) -> Tuple[bool, Optional[str]]:
    """Macro-level tallies agree with tallies of the expanded gate list."""
    expanded = count_resources(circuit)
    macro = count_macro_resources(circuit)
    if expanded != macro:
        delta = {k: v for k, v in (expanded - macro).items() if v}
        return False, f"expanded minus macro tallies: {delta}"
    return True, None


def check_report(report: RunReport) -> Tuple[bool, List[str]]:
    """Measured <= stated and, for interpolation runs, the expected census."""
    problems: List[str] = []
    if report.within_bound is False:
        problems.append(
            f"measured T-type {report.resources.t_type_count} exceeds "
            f"{report.formulas.proposed_at_operand_width} at operand width {report.formulas.operand_width}"
        )
    if report.command in ("interpolate", "build_bilerp") and report.census is not None:
        if report.census != INTERPOLATION_CENSUS:
            problems.append(f"census {report.census.model_dump()} differs from {INTERPOLATION_CENSUS.model_dump()}")
    if report.agreement is False:
        problems.append("oracle and circuit outputs disagree")
    for problem in problems:
        logger.warning(problem)
    return len(problems) == 0, problems


def run_circuit_checks(circuit: Circuit, interpolation: bool = False) -> Dict[str, Tuple[bool, Any]]:
    """All circuit-level rules keyed by name."""
    results: Dict[str, Tuple[bool, Any]] = {
        "block_bounds": check_block_bounds(circuit),
        "expansion_invariance": check_expansion_invariance(circuit),
    }
    if interpolation:
        results["census"] = check_census(circuit)
    return results
