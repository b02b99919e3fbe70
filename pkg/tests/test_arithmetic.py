#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_arithmetic.py - Adders, subtractor and multiplier

Values are checked exhaustively on the permutation simulator, T-counts
against the per-block formulas.
"""

import numpy as np
import pytest

from analysis.resources import block_rows, count_resources
from arithmetic.blocks import BlockKind, build_adder, build_subtractor
from arithmetic.multiplier import build_multiplier, multiplier_tcount
from circuits.core import Circuit, MagicMode, RegisterRole
from cli import build_named_circuit
from simulation.models import BranchPolicy, ClassicalState
from simulation.statevector import run_statevector
from utils.errors import RegisterError


def _multiplier(a_width, b_width, magic_mode=MagicMode.INITIAL_STATE):
    c = Circuit(magic_mode=magic_mode)
    a = c.alloc_register("a", a_width, RegisterRole.COLOR)
    b = c.alloc_register("b", b_width, RegisterRole.COLOR)
    product = c.alloc_register("product", a_width + b_width, RegisterRole.OUTPUT)
    build_multiplier(c, a, b, product)
    return c.freeze()


# =============================================================================
# VALUES
# =============================================================================

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_adder_is_modular_addition(n, permute, grid):
    a, b = grid(n, n)
    read = permute(build_named_circuit("adder", n), {"A": a, "B": b})
    assert np.array_equal(read("B"), (a + b) % (1 << n))
    assert np.array_equal(read("A"), a)
    assert read("__rest__").all()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_adder_with_carry_out(n, permute, grid):
    c = Circuit()
    A = c.alloc_register("A", n, RegisterRole.COLOR)
    B = c.alloc_register("B", n, RegisterRole.OUTPUT)
    carry = c.alloc_register("carry", 1, RegisterRole.OUTPUT)
    block = build_adder(c, A, B, carry_out=carry[0])
    assert block.operand_widths == (n, n + 1)
    assert count_resources(c).t_type_count == 4 * n

    a, b = grid(n, n)
    read = permute(c.freeze(), {"A": a, "B": b})
    assert np.array_equal(read("B"), (a + b) % (1 << n))
    assert np.array_equal(read("carry"), (a + b) >> n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_conditional_adder(n, permute, grid):
    ctrl, a, b = grid(1, n, n)
    read = permute(build_named_circuit("conditional-adder", n), {"ctrl": ctrl, "A": a, "B": b})
    assert np.array_equal(read("B"), (b + ctrl * a) % (1 << n))
    assert np.array_equal(read("A"), a)
    assert np.array_equal(read("ctrl"), ctrl)
    assert read("__rest__").all()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subtractor_is_modular_subtraction(n, permute, grid):
    a, b = grid(n, n)
    read = permute(build_named_circuit("subtractor", n), {"A": a, "B": b})
    assert np.array_equal(read("B"), (b - a) % (1 << n))
    assert np.array_equal(read("A"), a)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subtractor_undoes_the_adder(n, permute, grid):
    c = Circuit()
    A = c.alloc_register("A", n, RegisterRole.COLOR)
    B = c.alloc_register("B", n, RegisterRole.OUTPUT)
    build_adder(c, A, B)
    build_subtractor(c, A, B)
    assert count_resources(c).t_type_count == 8 * (n - 1)

    a, b = grid(n, n)
    read = permute(c.freeze(), {"A": a, "B": b})
    assert np.array_equal(read("B"), b)
    assert np.array_equal(read("A"), a)
    assert read("__rest__").all()


@pytest.mark.parametrize("a_width, b_width", [(1, 1), (2, 2), (3, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_multiplier_is_exact(a_width, b_width, magic_mode, permute, grid):
    a, b = grid(a_width, b_width)
    circuit = _multiplier(a_width, b_width, magic_mode)
    read = permute(circuit, {"a": a, "b": b})
    assert np.array_equal(read("product"), a * b)
    assert np.array_equal(read("a"), a)
    assert np.array_equal(read("b"), b)
    assert read("__rest__").all()


def test_adder_on_the_statevector_backend():
    circuit = build_named_circuit("adder", 3)
    A, B = circuit.register("A"), circuit.register("B")
    for a, b in [(0, 0), (3, 6), (7, 7), (5, 2)]:
        state = ClassicalState.from_registers(circuit, {"A": a, "B": b})
        for outcome in run_statevector(circuit, state):
            assert outcome.read(B) == (a + b) % 8
            assert outcome.read(A) == a


def test_small_multiplier_on_the_statevector_backend():
    circuit = _multiplier(2, 2)
    for a, b in [(3, 3), (2, 1), (1, 3)]:
        state = ClassicalState.from_registers(circuit, {"a": a, "b": b})
        (outcome,) = run_statevector(circuit, state, BranchPolicy.sample(seed=a * 4 + b))
        assert outcome.read(circuit.register("product")) == a * b


# =============================================================================
# T-COUNTS
# =============================================================================

@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("magic_mode", list(MagicMode))
def test_block_t_counts(n, magic_mode):
    def t(kind):
        return count_resources(build_named_circuit(kind, n, magic_mode=magic_mode)).t_type_count
    assert t("adder") == 4 * (n - 1)
    assert t("conditional-adder") == 8 * n - 4
    assert t("subtractor") == 4 * n - 4
    assert t("multiplier") == 8 * n * n - 4 * n


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_measured_blocks_stay_within_their_formulas(n):
    for kind in ("adder", "conditional-adder", "subtractor", "multiplier"):
        rows = block_rows(build_named_circuit(kind, n))
        assert len(rows) == 1
        assert rows[0]["within_bound"], rows[0]


def test_unequal_multiplier_cost():
    assert count_resources(_multiplier(3, 5)).t_type_count == multiplier_tcount(3, 5) == 108
    (row,) = block_rows(_multiplier(3, 5))
    assert row["kind"] == BlockKind.MULTIPLIER.value
    assert row["measured_t"] == row["stated_t"]


# =============================================================================
# OPERAND CHECKS
# =============================================================================

def test_width_mismatch_and_overlap_are_rejected():
    c = Circuit()
    A = c.alloc_register("A", 2, RegisterRole.COLOR)
    B = c.alloc_register("B", 3, RegisterRole.OUTPUT)
    with pytest.raises(RegisterError):
        build_adder(c, A, B)
    with pytest.raises(RegisterError):
        build_subtractor(c, B.view(0, 2), B.view(1, 3))


def test_multiplier_needs_a_clean_product_register():
    c = Circuit()
    a = c.alloc_register("a", 2, RegisterRole.COLOR)
    b = c.alloc_register("b", 2, RegisterRole.COLOR)
    narrow = c.alloc_register("narrow", 3, RegisterRole.OUTPUT)
    with pytest.raises(RegisterError):
        build_multiplier(c, a, b, narrow)
    dirty = c.alloc_register("dirty", 4, RegisterRole.COLOR)
    with pytest.raises(RegisterError):
        build_multiplier(c, a, b, dirty)
    with pytest.raises(RegisterError):
        build_multiplier(c, a, a, c.alloc_register("p", 4, RegisterRole.OUTPUT))
