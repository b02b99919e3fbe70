#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
reports.py - Run reports and formula comparison tables

RunReport is what `count`, `interpolate` and the dashboard hand back:
the InterpolationSpec echo, block census, measured resources, formula values and the
backend agreement flag. comparison_rows builds the proposed-versus-prior
table, one row per scale exponent.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from analysis.cost_model import (
    formula_prior_tcount,
    formula_proposed_tcount,
    improvement_ratio,
    is_power_of_two,
)
from analysis.resources import BlockCensus, ResourceReport, arithmetic_width, block_census, count_resources
from circuits.core import Circuit
from utils.errors import FormulaDomainError

logger = logging.getLogger(__name__)

NOT_AVAILABLE = "n/a"


class FormulaValues(BaseModel):
    """Closed-form T-counts next to a measured circuit."""
    model_config = ConfigDict(frozen=True)

    n: int
    proposed: int
    prior: Optional[int] = None
    operand_width: Optional[int] = None
    proposed_at_operand_width: Optional[int] = None
    prior_divider_approximate: bool = True


class ImprovementFigures(BaseModel):
    model_config = ConfigDict(frozen=True)

    asymptotic: float
    evaluated: Optional[float] = None


class RunReport(BaseModel):
    """
    Machine-readable summary of one run.

    `agreement` is None unless both the oracle and the circuit were run.
    """
    model_config = ConfigDict(frozen=True)

    command: str
    spec: Dict[str, Any] = Field(default_factory=dict)
    census: Optional[BlockCensus] = None
    resources: Optional[ResourceReport] = None
    formulas: Optional[FormulaValues] = None
    improvement: Optional[ImprovementFigures] = None
    agreement: Optional[bool] = None
    timing_seconds: float = 0.0

    @property
    def within_bound(self) -> Optional[bool]:
        """measured T-type <= the proposed formula at the operand width."""
        if self.resources is None or self.formulas is None or self.formulas.proposed_at_operand_width is None:
            return None
        return self.resources.t_type_count <= self.formulas.proposed_at_operand_width


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    proposed: int
    prior: Optional[int] = None
    improvement_pct: Optional[float] = None
    measured: Optional[int] = None
    operand_width: Optional[int] = None
    bound_at_width: Optional[int] = None


# =============================================================================
# BUILDERS
# =============================================================================

def formula_values(n: int, operand_width: Optional[int] = None) -> FormulaValues:
    prior = formula_prior_tcount(n) if is_power_of_two(n) else None
    at_width = formula_proposed_tcount(operand_width) if operand_width else None
    return FormulaValues(n=n, proposed=formula_proposed_tcount(n), prior=prior,
                         operand_width=operand_width, proposed_at_operand_width=at_width)


def improvement_figures(n: Optional[int] = None) -> ImprovementFigures:
    evaluated = improvement_ratio(n) if n is not None and is_power_of_two(n) else None
    return ImprovementFigures(asymptotic=improvement_ratio(), evaluated=evaluated)


def circuit_report(command: str, circuit: Circuit, n: Optional[int] = None,
                   spec: Optional[Dict[str, Any]] = None,
                   agreement: Optional[bool] = None, timing_seconds: float = 0.0) -> RunReport:
    """
    Count a circuit and attach the formula values for scale exponent n.

    Without n (a bare block file) only census and resources are filled in.
    """
    resources = count_resources(circuit)
    census = block_census(circuit)
    formulas = improvement = None
    if n is not None:
        formulas = formula_values(n, arithmetic_width(circuit) or None)
        improvement = improvement_figures(n)
    report = RunReport(
        command=command, spec=dict(spec or {}), census=census, resources=resources,
        formulas=formulas, improvement=improvement, agreement=agreement,
        timing_seconds=timing_seconds,
    )
    if report.within_bound is False:
        logger.warning("measured T-type %d exceeds the formula value %d",
                       resources.t_type_count, formulas.proposed_at_operand_width)
    return report


def comparison_rows(n_values: Iterable[int],
                    measured: Optional[Dict[int, ResourceReport]] = None,
                    widths: Optional[Dict[int, int]] = None) -> List[ComparisonRow]:
    """
    Proposed-versus-prior rows. The prior column is None when n is not a
    power of two; measured columns are filled from `measured` when given.

    Example:
        >>> comparison_rows([2])[0].prior
        3830
    """
    measured = measured or {}
    widths = widths or {}
    rows = []
    for n in n_values:
        proposed = formula_proposed_tcount(n)
        prior = improvement = None
        try:
            prior = formula_prior_tcount(n)
            improvement = 100.0 * (1.0 - proposed / prior)
        except FormulaDomainError as exc:
            logger.debug("prior column for n=%s: %s", n, exc)
        report = measured.get(n)
        width = widths.get(n)
        rows.append(ComparisonRow(
            n=n, proposed=proposed, prior=prior, improvement_pct=improvement,
            measured=report.t_type_count if report is not None else None,
            operand_width=width,
            bound_at_width=formula_proposed_tcount(width) if width else None,
        ))
    return rows


_MEASURED_COLUMNS = ["measured", "operand_width", "bound_at_width"]


def comparison_frame(rows: List[ComparisonRow]) -> pd.DataFrame:
    """Numeric frame of the rows; measured columns dropped when nothing was measured."""
    frame = pd.DataFrame([row.model_dump() for row in rows])
    if not frame.empty and all(row.measured is None for row in rows):
        frame = frame.drop(columns=_MEASURED_COLUMNS)
    return frame


def _cell(key: str, value):
    if value is None:
        return NOT_AVAILABLE
    if key == "improvement_pct":
        return f"{value:.2f}%"
    return value


def format_comparison_table(rows: List[ComparisonRow]) -> str:
    """Aligned text table with an asymptotic-improvement footer."""
    footer = f"asymptotic improvement: {100.0 * improvement_ratio():.2f}%"
    if not rows:
        return f"(no rows)\n{footer}"
    records = [{k: _cell(k, v) for k, v in row.model_dump().items()} for row in rows]
    frame = pd.DataFrame(records, dtype=object)
    if all(row.measured is None for row in rows):
        frame = frame.drop(columns=_MEASURED_COLUMNS)
    return f"{frame.to_string(index=False)}\n{footer}"


def format_report_table(report: RunReport) -> str:
    """Two-column key/value view of a RunReport for standard output."""
    items = [("command", report.command)]
    items += [(f"spec.{k}", v) for k, v in report.spec.items()]
    if report.census is not None:
        items += [(f"census.{k}", v) for k, v in report.census.model_dump().items()]
    if report.resources is not None:
        items += [(k, v) for k, v in report.resources.model_dump().items()]
    if report.formulas is not None:
        items += [(f"formula.{k}", NOT_AVAILABLE if v is None else v)
                  for k, v in report.formulas.model_dump().items()]
        items.append(("within_bound", report.within_bound))
    if report.improvement is not None:
        items.append(("improvement.asymptotic", f"{100.0 * report.improvement.asymptotic:.2f}%"))
        if report.improvement.evaluated is not None:
            items.append(("improvement.evaluated", f"{100.0 * report.improvement.evaluated:.2f}%"))
    if report.agreement is not None:
        items.append(("agreement", report.agreement))
    items.append(("timing_seconds", f"{report.timing_seconds:.3f}"))
    frame = pd.DataFrame(items, columns=["field", "value"])
    return frame.to_string(index=False)
