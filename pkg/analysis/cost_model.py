#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
cost_model.py - Closed-form T-count formulas for the interpolation circuits

Two designs are modelled:

    proposed  adder 4n, subtractor 4n-4, multiplier 8n^2-4n, no divider
              multiplicities {adder 3, subtractor 2, multiplier 8, divider 0}
    prior     adder 28n-14, subtractor 28n-14,
              multiplier 7n^2 + S(n), divider ~400n^2
              multiplicities {adder 3, subtractor 4, multiplier 8, divider 2}

with S(n) = sum_{i=1}^{log2 n} (n/2^i) (14 (n + i - 2^(i-1)) - 14), defined
only for n a power of two. Composing the proposed blocks gives
64n^2 - 12n - 8; composing the prior blocks gives
856n^2 + 196n - 98 + 8 S(n).
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional

import pandas as pd

from arithmetic.blocks import BlockKind
from utils.errors import FormulaDomainError

PROPOSED_LEADING = 64
PRIOR_LEADING = 856


class Variant(Enum):
    PROPOSED = "proposed"
    PRIOR = "prior"


# =============================================================================
# DOMAIN CHECKS
# =============================================================================

def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise FormulaDomainError(f"n must be an integer >= 1, got {n!r}")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _check_power_of_two(n: int) -> None:
    _check_n(n)
    if not is_power_of_two(n):
        raise FormulaDomainError(
            f"prior-work formula needs n a power of two (log2 {n} is not an integer)"
        )


def prior_sigma(n: int) -> int:
    """S(n); the sum is empty for n = 1."""
    _check_power_of_two(n)
    n = int(n)
    total = 0
    for i in range(1, n.bit_length()):
        total += (n >> i) * (14 * (n + i - (1 << (i - 1))) - 14)
    return total


# =============================================================================
# PER-BLOCK FORMULAS
# =============================================================================

_PROPOSED_BLOCKS: Dict[BlockKind, Callable[[int], int]] = {
    BlockKind.ADDER: lambda n: 4 * n,
    BlockKind.SUBTRACTOR: lambda n: 4 * n - 4,
    BlockKind.MULTIPLIER: lambda n: 8 * n * n - 4 * n,
    BlockKind.CONDITIONAL_ADDER: lambda n: 8 * n - 4,
    BlockKind.DIVIDER: lambda n: 0,
}

_PRIOR_BLOCKS: Dict[BlockKind, Callable[[int], int]] = {
    BlockKind.ADDER: lambda n: 28 * n - 14,
    BlockKind.SUBTRACTOR: lambda n: 28 * n - 14,
    BlockKind.MULTIPLIER: lambda n: 7 * n * n + prior_sigma(n),
    BlockKind.DIVIDER: lambda n: 400 * n * n,
}

_FORMULA_TEXT = {
    Variant.PROPOSED: {
        BlockKind.ADDER: "4n",
        BlockKind.SUBTRACTOR: "4n-4",
        BlockKind.MULTIPLIER: "8n^2-4n",
        BlockKind.DIVIDER: "-",
    },
    Variant.PRIOR: {
        BlockKind.ADDER: "28n-14",
        BlockKind.SUBTRACTOR: "28n-14",
        BlockKind.MULTIPLIER: "7n^2+S(n)",
        BlockKind.DIVIDER: "~400n^2",
    },
}

MULTIPLICITIES: Dict[Variant, Dict[BlockKind, int]] = {
    Variant.PROPOSED: {BlockKind.ADDER: 3, BlockKind.SUBTRACTOR: 2, BlockKind.MULTIPLIER: 8, BlockKind.DIVIDER: 0},
    Variant.PRIOR: {BlockKind.ADDER: 3, BlockKind.SUBTRACTOR: 4, BlockKind.MULTIPLIER: 8, BlockKind.DIVIDER: 2},
}

APPROXIMATE_BLOCKS = {(Variant.PRIOR, BlockKind.DIVIDER)}


@dataclass(frozen=True)
class CostModel:
    """
    Per-block closed forms and the block multiplicities of both designs.

    Example:
        >>> CostModel().block_tcount(Variant.PROPOSED, BlockKind.MULTIPLIER, 2)
        24
    """

    def block_tcount(self, variant: Variant, kind: BlockKind, n: int) -> int:
        variant = Variant(variant)
        if variant is Variant.PRIOR:
            if kind is BlockKind.MULTIPLIER:
                _check_power_of_two(n)
            else:
                _check_n(n)
            formulas = _PRIOR_BLOCKS
        else:
            _check_n(n)
            formulas = _PROPOSED_BLOCKS
        if kind not in formulas:
            raise FormulaDomainError(f"no {variant.value} formula for {kind.value}")
        return formulas[kind](n)

    def multiplicities(self, variant: Variant) -> Dict[BlockKind, int]:
        return dict(MULTIPLICITIES[Variant(variant)])

    def is_approximate(self, variant: Variant, kind: BlockKind) -> bool:
        return (Variant(variant), kind) in APPROXIMATE_BLOCKS

    def breakdown(self, variant: Variant, n: int) -> pd.DataFrame:
        """One row per block kind: formula, T-count, multiplicity, subtotal."""
        variant = Variant(variant)
        rows = []
        for kind, count in MULTIPLICITIES[variant].items():
            tcount = self.block_tcount(variant, kind, n)
            rows.append({
                "block": kind.value,
                "formula": _FORMULA_TEXT[variant][kind],
                "t_count": tcount,
                "multiplicity": count,
                "subtotal": tcount * count,
                "approximate": self.is_approximate(variant, kind),
            })
        return pd.DataFrame(rows)


DEFAULT_COST_MODEL = CostModel()


# =============================================================================
# WHOLE-CIRCUIT FORMULAS
# =============================================================================

def formula_proposed_tcount(n: int) -> int:
    """64n^2 - 12n - 8, the same for scale-down and scale-up."""
    _check_n(n)
    return 64 * n * n - 12 * n - 8


def formula_prior_tcount(n: int) -> int:
    """856n^2 + 196n - 98 + 8 S(n); n must be a power of two."""
    _check_power_of_two(n)
    return 856 * n * n + 196 * n - 98 + 8 * prior_sigma(n)


def composed_tcount(model: CostModel, variant: Variant, n: int) -> int:
    """Sum of block T-count times multiplicity."""
    variant = Variant(variant)
    return sum(
        model.block_tcount(variant, kind, n) * count
        for kind, count in model.multiplicities(variant).items()
        if count
    )


def improvement_ratio(n: Optional[int] = None) -> float:
    """
    Fractional T-count saving of the proposed design over the prior one.

    Without n this is the leading-coefficient ratio 1 - 64/856 (about 92.52%);
    with n it is 1 - proposed(n)/prior(n).
    """
    if n is None:
        return 1.0 - PROPOSED_LEADING / PRIOR_LEADING
    return 1.0 - formula_proposed_tcount(n) / formula_prior_tcount(n)
