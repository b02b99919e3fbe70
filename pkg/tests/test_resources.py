#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_resources.py - Closed-form cost model and gate tallies
"""

import pytest

from analysis.cost_model import (
    DEFAULT_COST_MODEL,
    Variant,
    composed_tcount,
    formula_prior_tcount,
    formula_proposed_tcount,
    improvement_ratio,
    is_power_of_two,
    prior_sigma,
)
from analysis.resources import (
    count_macro_resources,
    count_resources,
    proposed_block_bound,
)
from arithmetic.blocks import BlockKind
from circuits.core import MagicMode, new_circuit
from cli import build_named_circuit
from utils.errors import FormulaDomainError


# =============================================================================
# FORMULAS
# =============================================================================

@pytest.mark.parametrize("n, expected", [(1, 44), (2, 224), (4, 968), (8, 3992)])
def test_proposed_closed_form(n, expected):
    assert formula_proposed_tcount(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 954), (2, 3830)])
def test_prior_closed_form(n, expected):
    assert formula_prior_tcount(n) == expected


def test_prior_sigma():
    assert prior_sigma(1) == 0
    assert prior_sigma(2) == 14
    assert prior_sigma(4) == 126


@pytest.mark.parametrize("bad", [0, -2, 1.5, True])
def test_formula_domain(bad):
    with pytest.raises(FormulaDomainError):
        formula_proposed_tcount(bad)


def test_prior_needs_a_power_of_two():
    assert not is_power_of_two(3)
    with pytest.raises(FormulaDomainError):
        formula_prior_tcount(3)
    with pytest.raises(FormulaDomainError):
        prior_sigma(6)
    # only the prior multiplier needs the power of two
    assert DEFAULT_COST_MODEL.block_tcount(Variant.PRIOR, BlockKind.ADDER, 3) == 70


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
@pytest.mark.parametrize("variant", list(Variant))
def test_composed_blocks_equal_the_closed_forms(n, variant):
    closed = formula_proposed_tcount(n) if variant is Variant.PROPOSED else formula_prior_tcount(n)
    assert composed_tcount(DEFAULT_COST_MODEL, variant, n) == closed


def test_improvement_ratio():
    assert improvement_ratio() == pytest.approx(1 - 64 / 856)
    assert improvement_ratio() == pytest.approx(0.925233, abs=1e-6)
    assert improvement_ratio(2) == pytest.approx(1 - 224 / 3830)
    assert improvement_ratio(1) == pytest.approx(1 - 44 / 954)


def test_breakdown_frame():
    frame = DEFAULT_COST_MODEL.breakdown(Variant.PROPOSED, 2)
    assert frame.set_index("block")["t_count"].to_dict() == {
        "adder": 8, "subtractor": 4, "multiplier": 24, "divider": 0,
    }
    assert frame["subtotal"].sum() == 224
    prior = DEFAULT_COST_MODEL.breakdown(Variant.PRIOR, 2)
    assert prior["subtotal"].sum() == 3830
    assert prior.set_index("block").loc["divider", "approximate"]


def test_per_block_bounds():
    assert proposed_block_bound(BlockKind.ADDER, (3,)) == 12
    assert proposed_block_bound(BlockKind.SUBTRACTOR, (3, 3)) == 8
    assert proposed_block_bound(BlockKind.CONDITIONAL_ADDER, (2, 2)) == 12
    assert proposed_block_bound(BlockKind.MULTIPLIER, (3, 5)) == 108
    assert proposed_block_bound(BlockKind.MULTIPLIER, (4,)) == 112
    with pytest.raises(FormulaDomainError):
        proposed_block_bound(BlockKind.DIVIDER, (2,))
    with pytest.raises(FormulaDomainError):
        proposed_block_bound(BlockKind.ADDER, ())


# =============================================================================
# TALLIES
# =============================================================================

def test_empty_circuit_costs_nothing():
    report = count_resources(new_circuit(5))
    assert report.t_type_count == 0
    assert report.qubit_count == 5


@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_gadget_tallies(magic_mode):
    and_gate = count_resources(build_named_circuit("and", magic_mode=magic_mode))
    uncompute = count_resources(build_named_circuit("uncompute", magic_mode=magic_mode))
    assert and_gate.t_type_count == 4
    assert and_gate.cnot_count == 6
    assert uncompute.t_type_count == 0
    assert uncompute.measurement_count == 1
    if magic_mode is MagicMode.INITIAL_STATE:
        assert and_gate.magic_state_count == 1
    else:
        assert and_gate.magic_state_count == 0


def test_report_difference():
    toffoli = count_resources(build_named_circuit("toffoli"))
    and_gate = count_resources(build_named_circuit("and"))
    delta = toffoli - and_gate
    assert delta["t_type_count"] == 0
    assert delta["measurement_count"] == 1


@pytest.mark.parametrize("kind", ["adder", "conditional-adder", "subtractor", "multiplier"])
@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_macro_tally_equals_expanded_tally(kind, magic_mode):
    circuit = build_named_circuit(kind, 3, magic_mode=magic_mode)
    macro, expanded = count_macro_resources(circuit), count_resources(circuit)
    assert macro.t_type_count == expanded.t_type_count
    assert macro.magic_state_count == expanded.magic_state_count
    assert macro.cnot_count == expanded.cnot_count
    assert macro.measurement_count == expanded.measurement_count
