#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
multiplier.py - Shift-and-add multiplier

product := a * b for a zero product register of |a| + |b| bits. Bit b_0
writes b_0*a with Toffolis; every later bit b_i is a conditional adder of a
into the window product[i .. i+|a|-1] whose carry lands in product[i+|a|].
"""

from __future__ import annotations

import logging

from arithmetic.blocks import ArithmeticBlock, BlockKind, _check_disjoint, _record, conditional_add
from circuits.core import Circuit, Register
from circuits.gadgets import emit_toffoli
from utils.errors import RegisterError

logger = logging.getLogger(__name__)


def multiplier_tcount(a_width: int, b_width: int) -> int:
    """T-count of build_multiplier: 4|a| for b_0, 8|a| per later bit."""
    return 8 * a_width * b_width - 4 * a_width


def build_multiplier(circuit: Circuit, a: Register, b: Register, product: Register) -> ArithmeticBlock:
    """
    product := a * b, a and b unchanged.

    `a` is the addend and `b` supplies the controls; with equal widths the
    T-count is 8n^2 - 4n, n times the conditional adder's 8n - 4.

    Raises:
        RegisterError: overlapping registers, |product| != |a| + |b|, or a
            product qubit that is not known to be |0>
    """
    _check_disjoint(a, b, product)
    if product.width != a.width + b.width:
        raise RegisterError(
            f"product '{product.name}' must have {a.width + b.width} bits, has {product.width}"
        )
    dirty = [q for q in product if not circuit.is_known_zero(q)]
    if dirty:
        raise RegisterError(f"product register '{product.name}' is not all-zero (qubits {dirty})")

    start = len(circuit.gates)
    ka = a.width
    for j in range(ka):
        emit_toffoli(circuit, b[0], a[j], product[j])
    for i in range(1, b.width):
        window = product.qubits[i:i + ka]
        conditional_add(circuit, b[i], a.qubits, window, carry_out=product[i + ka])
    return _record(circuit, BlockKind.MULTIPLIER, start, (a, b), product, (a.width, b.width))
