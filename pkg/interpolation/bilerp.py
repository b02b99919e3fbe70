#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
bilerp.py - Scale-down and scale-up bilinear interpolation circuits

Both circuits take the pixel position |Y>|X> and the four neighbour colours
as inputs and compute the interpolated colour in five steps:

    1. copy the n fractional position bits into weight registers w_y, w_x
    2. two subtractors: K_y := 2^n - w_y, K_x := 2^n - w_x
    3. four multipliers: the pairwise weight products
    4. four multipliers: weight product x neighbour colour
    5. three adders: sum the four terms into the first one

C_out is the accumulator with its low 2n bits dropped, which is the floor
division by 2^(2n). Output positions are register aliases: scale-down keeps
the high m-n position bits, scale-up appends n sub-position bits below Y, X.

Weight arithmetic runs on n+1 bits because 2^n itself must be representable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from arithmetic.blocks import build_adder, build_subtractor
from arithmetic.multiplier import build_multiplier
from circuits.core import Circuit, Gate, GateKind, MagicMode, Register, RegisterRole
from imaging.neqr import MAX_COLOR_BITS
from utils.errors import SpecError

logger = logging.getLogger(__name__)

COLOR_NAMES = ("C_yx", "C_y1x", "C_yx1", "C_y1x1")


class InterpolationMode(str, Enum):
    DOWN = "down"
    UP = "up"


class InterpolationSpec(BaseModel):
    """
    What to build: scale mode, position width m, scale exponent n, colour width q.

    Example:
        >>> InterpolationSpec(mode="down", m=2, n=1, q=4).factor
        2
    """
    model_config = ConfigDict(frozen=True)

    mode: InterpolationMode
    m: int = Field(ge=1, description="input position bit-width (side 2^m)")
    n: int = Field(ge=1, description="scale exponent (factor 2^n)")
    q: int = Field(ge=1, le=MAX_COLOR_BITS, description="colour bit-width")

    @model_validator(mode="after")
    def _down_needs_n_le_m(self) -> "InterpolationSpec":
        if self.mode is InterpolationMode.DOWN and self.n > self.m:
            raise ValueError(f"scale-down needs n <= m (n={self.n}, m={self.m})")
        return self

    @property
    def factor(self) -> int:
        return 1 << self.n

    @property
    def output_m(self) -> int:
        return self.m - self.n if self.mode is InterpolationMode.DOWN else self.m + self.n


def make_spec(mode: str, m: int, n: int, q: int) -> InterpolationSpec:
    """InterpolationSpec constructor that reports problems as SpecError."""
    try:
        return InterpolationSpec(mode=mode, m=m, n=n, q=q)
    except ValidationError as exc:
        problems = "; ".join(err["msg"] for err in exc.errors())
        raise SpecError(f"invalid interpolation spec: {problems}") from None


@dataclass(frozen=True)
class InterpolationLayout:
    """
    Register map of a generated interpolation circuit.

    Position outputs, the accumulator and C_out are aliases (views) of
    registers in the circuit's table.
    """
    spec: InterpolationSpec
    y: Register
    x: Register
    ybar: Optional[Register]
    xbar: Optional[Register]
    colors: Tuple[Register, Register, Register, Register]
    w_y: Register
    w_x: Register
    comp_y: Register
    comp_x: Register
    products: Tuple[Register, Register, Register, Register]
    terms: Tuple[Register, Register, Register, Register]
    accumulator: Register
    c_out: Register
    garbage: Tuple[Register, ...]
    sub_y: Optional[Register] = None
    sub_x: Optional[Register] = None

    def register_map(self) -> Dict[str, Optional[Register]]:
        mapping = {
            "Y": self.y, "X": self.x, "Ybar": self.ybar, "Xbar": self.xbar,
            "w_y": self.w_y, "w_x": self.w_x, "K_y": self.comp_y, "K_x": self.comp_x,
            "accumulator": self.accumulator, "C_out": self.c_out,
            "YS": self.sub_y, "XS": self.sub_x,
        }
        mapping.update(zip(COLOR_NAMES, self.colors))
        mapping.update({f"P{i}": p for i, p in enumerate(self.products)})
        mapping.update({f"T{i}": t for i, t in enumerate(self.terms)})
        return mapping


# =============================================================================
# SHARED STEPS 1-5
# =============================================================================

def _interpolate_core(circuit: Circuit, spec: InterpolationSpec,
                      frac_y: Register, frac_x: Register,
                      colors: Tuple[Register, ...]) -> dict:
    n, q = spec.n, spec.q
    weight_bits = n + 1

    # step 1: weight copies
    w_y = circuit.alloc_register("w_y", weight_bits, RegisterRole.GARBAGE)
    w_x = circuit.alloc_register("w_x", weight_bits, RegisterRole.GARBAGE)
    for frac, w in ((frac_y, w_y), (frac_x, w_x)):
        for i in range(n):
            circuit.append(Gate(GateKind.CNOT, (frac[i], w[i])))

    # step 2: K := 2^n - w
    comp_y = circuit.alloc_register("K_y", weight_bits, RegisterRole.CONSTANT)
    comp_x = circuit.alloc_register("K_x", weight_bits, RegisterRole.CONSTANT)
    for k in (comp_y, comp_x):
        circuit.append(Gate(GateKind.X, (k[n],)))
    build_subtractor(circuit, w_y, comp_y)
    build_subtractor(circuit, w_x, comp_x)

    # step 3: weights of c_yx, c_y1x, c_yx1, c_y1x1
    pairs = ((comp_y, comp_x), (w_y, comp_x), (comp_y, w_x), (w_y, w_x))
    products = []
    for i, (a, b) in enumerate(pairs):
        product = circuit.alloc_register(f"P{i}", 2 * weight_bits, RegisterRole.GARBAGE)
        build_multiplier(circuit, a, b, product)
        products.append(product)

    # step 4: weight x colour; a weight is at most 2^(2n), so 2n+1 bits hold it
    addend_bits = 2 * n + 1
    terms = []
    for i, (product, color) in enumerate(zip(products, colors)):
        role = RegisterRole.OUTPUT if i == 0 else RegisterRole.GARBAGE
        term = circuit.alloc_register(f"T{i}", addend_bits + q, role)
        build_multiplier(circuit, product.view(0, addend_bits), color, term)
        terms.append(term)

    # step 5: the weighted sum stays below 2^(q+2n)
    acc_bits = q + 2 * n
    accumulator = terms[0].view(0, acc_bits)
    for term in terms[1:]:
        build_adder(circuit, term.view(0, acc_bits), accumulator)
    c_out = terms[0].view(2 * n, 2 * n + q)

    return dict(
        w_y=w_y, w_x=w_x, comp_y=comp_y, comp_x=comp_x,
        products=tuple(products), terms=tuple(terms),
        accumulator=accumulator, c_out=c_out,
        garbage=(w_y, w_x, comp_y, comp_x, *products, *terms[1:]),
    )


def _alloc_inputs(circuit: Circuit, spec: InterpolationSpec):
    y = circuit.alloc_register("Y", spec.m, RegisterRole.POSITION_Y)
    x = circuit.alloc_register("X", spec.m, RegisterRole.POSITION_X)
    colors = tuple(circuit.alloc_register(name, spec.q, RegisterRole.COLOR) for name in COLOR_NAMES)
    return y, x, colors


# =============================================================================
# BUILDERS
# =============================================================================

def build_scale_down(spec: InterpolationSpec,
                     magic_mode: MagicMode = MagicMode.INITIAL_STATE) -> Tuple[Circuit, InterpolationLayout]:
    """
    Circuit shrinking the image by 2^n.

    Ybar = Y[n..m-1] and Xbar = X[n..m-1] are aliases (no gates); the low n
    bits of Y and X are the interpolation weights.

    Raises:
        SpecError: spec.mode is not down, or n > m
    """
    if spec.mode is not InterpolationMode.DOWN:
        raise SpecError(f"build_scale_down needs mode=down, got {spec.mode.value}")
    if spec.n > spec.m:
        raise SpecError(f"scale-down needs n <= m (n={spec.n}, m={spec.m})")

    circuit = Circuit(magic_mode=magic_mode)
    y, x, colors = _alloc_inputs(circuit, spec)
    parts = _interpolate_core(circuit, spec, y.view(0, spec.n), x.view(0, spec.n), colors)
    ybar = y.view(spec.n, spec.m) if spec.n < spec.m else None
    xbar = x.view(spec.n, spec.m) if spec.n < spec.m else None
    layout = InterpolationLayout(spec=spec, y=y, x=x, ybar=ybar, xbar=xbar, colors=colors, **parts)
    logger.debug("scale-down %s: %d qubits, %d gates", spec, circuit.qubit_count, len(circuit.gates))
    return circuit.freeze(), layout


def build_scale_up(spec: InterpolationSpec,
                   magic_mode: MagicMode = MagicMode.INITIAL_STATE) -> Tuple[Circuit, InterpolationLayout]:
    """
    Circuit enlarging the image by 2^n.

    Ybar = YS || Y concatenates n sub-position qubits below Y (same for X).
    They start at 0 and carry the output pixel's sub-position when an
    off-grid pixel is simulated; their values are the weights.

    Raises:
        SpecError: spec.mode is not up
    """
    if spec.mode is not InterpolationMode.UP:
        raise SpecError(f"build_scale_up needs mode=up, got {spec.mode.value}")

    circuit = Circuit(magic_mode=magic_mode)
    y, x, colors = _alloc_inputs(circuit, spec)
    sub_y = circuit.alloc_register("YS", spec.n, RegisterRole.POSITION_Y)
    sub_x = circuit.alloc_register("XS", spec.n, RegisterRole.POSITION_X)
    parts = _interpolate_core(circuit, spec, sub_y, sub_x, colors)
    ybar = Register("Ybar", sub_y.qubits + y.qubits, RegisterRole.POSITION_Y)
    xbar = Register("Xbar", sub_x.qubits + x.qubits, RegisterRole.POSITION_X)
    layout = InterpolationLayout(spec=spec, y=y, x=x, ybar=ybar, xbar=xbar, colors=colors,
                                 sub_y=sub_y, sub_x=sub_x, **parts)
    logger.debug("scale-up %s: %d qubits, %d gates", spec, circuit.qubit_count, len(circuit.gates))
    return circuit.freeze(), layout


def build_interpolation(spec: InterpolationSpec,
                        magic_mode: MagicMode = MagicMode.INITIAL_STATE) -> Tuple[Circuit, InterpolationLayout]:
    if spec.mode is InterpolationMode.DOWN:
        return build_scale_down(spec, magic_mode)
    return build_scale_up(spec, magic_mode)
