#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
driver.py - Run an interpolation over a whole image

The circuit is a permutation at the macro level, so every output pixel is a
single basis input: position bits plus the four neighbour colours. The
permutation simulator evaluates them in column batches and the oracle gives
the expected colours.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from circuits.core import Circuit, MagicMode
from imaging.neqr import NEQRImage, neighborhood_arrays
from interpolation.bilerp import InterpolationLayout, InterpolationMode, InterpolationSpec, build_interpolation
from interpolation.oracle import oracle_scale_down, oracle_scale_up, scale_down_sources
from simulation.permutation import read_register_batch, run_permutation_batch, write_register_batch
from utils.errors import SpecError, VerificationError

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 1024


class Backend(str, Enum):
    ORACLE = "oracle"
    PERMUTATION_SIM = "permutation_sim"
    BOTH = "both"


@dataclass
class InterpolationRun:
    """
    Everything one interpolate call produced.

    Attributes:
        image: The result (circuit output when the circuit ran, else the oracle's)
        oracle_image: Oracle output, None for the permutation_sim backend
        circuit_image: Circuit output, None for the oracle backend
        mismatch: First (y, x, expected, got) where the two disagree
    """
    spec: InterpolationSpec
    backend: Backend
    image: NEQRImage
    oracle_image: Optional[NEQRImage] = None
    circuit_image: Optional[NEQRImage] = None
    mismatch: Optional[Tuple[int, int, int, int]] = None
    circuit: Optional[Circuit] = None

    @property
    def agreement(self) -> Optional[bool]:
        if self.oracle_image is None or self.circuit_image is None:
            return None
        return self.mismatch is None


def _check_image(image: NEQRImage, spec: InterpolationSpec) -> None:
    if image.m != spec.m or image.q != spec.q:
        raise SpecError(
            f"image is m={image.m}, q={image.q} but the interpolation spec asks for m={spec.m}, q={spec.q}"
        )


def _oracle(image: NEQRImage, spec: InterpolationSpec, subpixel: Tuple[int, int]) -> NEQRImage:
    if spec.mode is InterpolationMode.DOWN:
        return oracle_scale_down(image, spec.n, subpixel)
    return oracle_scale_up(image, spec.n)


def _pixel_inputs(image: NEQRImage, spec: InterpolationSpec, layout: InterpolationLayout,
                  subpixel: Tuple[int, int]):
    """Register values for every output pixel, row-major: list of (register, values)."""
    n = spec.n
    if spec.mode is InterpolationMode.DOWN:
        ys, xs = scale_down_sources(spec.m, n, subpixel)
        anchor_y, anchor_x = ys, xs
        assignments = [(layout.y, ys), (layout.x, xs)]
    else:
        side = 1 << spec.output_m
        ybig, xbig = np.divmod(np.arange(side * side, dtype=np.int64), side)
        mask = (1 << n) - 1
        anchor_y, anchor_x = ybig >> n, xbig >> n
        assignments = [(layout.y, anchor_y), (layout.x, anchor_x),
                       (layout.sub_y, ybig & mask), (layout.sub_x, xbig & mask)]
    colors = neighborhood_arrays(image, anchor_y, anchor_x)
    assignments.extend(zip(layout.colors, colors))
    return assignments


def simulate_image(image: NEQRImage, spec: InterpolationSpec,
                   circuit: Circuit, layout: InterpolationLayout,
                   subpixel: Tuple[int, int] = (0, 0),
                   batch_size: int = DEFAULT_BATCH_SIZE) -> NEQRImage:
    """
    Push every output pixel through the circuit and read C_out.

    Raises:
        VerificationError: an input colour register changed, or a gadget
            check failed inside the simulator
    """
    _check_image(image, spec)
    if batch_size < 1:
        raise SpecError(f"batch_size must be >= 1, got {batch_size}")
    assignments = _pixel_inputs(image, spec, layout, subpixel)
    total = len(assignments[0][1])
    out = np.zeros(total, dtype=np.int64)

    for start in range(0, total, batch_size):
        stop = min(start + batch_size, total)
        bits = np.zeros((circuit.qubit_count, stop - start), dtype=np.uint8)
        for register, values in assignments:
            write_register_batch(bits, register.qubits, values[start:stop])
        result = run_permutation_batch(circuit, bits)
        for register, values in assignments:
            if not np.array_equal(read_register_batch(result, register.qubits), values[start:stop]):
                raise VerificationError(f"input register {register.name} changed for pixels {start}..{stop - 1}")
        out[start:stop] = read_register_batch(result, layout.c_out.qubits)
        logger.debug("simulated pixels %d..%d of %d", start, stop - 1, total)

    return NEQRImage(spec.output_m, spec.q, out.reshape(1 << spec.output_m, 1 << spec.output_m))


def _first_mismatch(expected: NEQRImage, got: NEQRImage) -> Optional[Tuple[int, int, int, int]]:
    diff = np.argwhere(expected.to_array() != got.to_array())
    if diff.size == 0:
        return None
    y, x = (int(v) for v in diff[0])
    return y, x, expected.pixel(y, x), got.pixel(y, x)


def run_interpolation(image: NEQRImage, spec: InterpolationSpec,
                      backend: Backend = Backend.ORACLE,
                      subpixel: Tuple[int, int] = (0, 0),
                      batch_size: int = DEFAULT_BATCH_SIZE,
                      magic_mode: MagicMode = MagicMode.INITIAL_STATE) -> InterpolationRun:
    """Interpolate with the chosen backend; "both" also records the first disagreement."""
    backend = Backend(backend)
    _check_image(image, spec)
    if spec.mode is InterpolationMode.UP and tuple(subpixel) != (0, 0):
        raise SpecError("subpixel offsets apply to scale-down only")

    oracle_image = _oracle(image, spec, subpixel) if backend is not Backend.PERMUTATION_SIM else None
    circuit_image = None
    circuit = None
    if backend is not Backend.ORACLE:
        circuit, layout = build_interpolation(spec, magic_mode)
        circuit_image = simulate_image(image, spec, circuit, layout, subpixel, batch_size)

    mismatch = None
    if oracle_image is not None and circuit_image is not None:
        mismatch = _first_mismatch(oracle_image, circuit_image)
        if mismatch:
            logger.warning("circuit and oracle disagree at pixel (%d, %d): expected %d, got %d", *mismatch)

    result = circuit_image if circuit_image is not None else oracle_image
    return InterpolationRun(spec, backend, result, oracle_image, circuit_image, mismatch, circuit)


def interpolate_image(image: NEQRImage, spec: InterpolationSpec,
                      backend: Backend = Backend.ORACLE,
                      subpixel: Tuple[int, int] = (0, 0),
                      batch_size: int = DEFAULT_BATCH_SIZE) -> NEQRImage:
    """
    Interpolated image.

    Raises:
        SpecError: image dimensions differ from the InterpolationSpec
        VerificationError: backend "both" and the circuit disagrees with the oracle
    """
    run = run_interpolation(image, spec, backend, subpixel, batch_size)
    if run.mismatch is not None:
        y, x, expected, got = run.mismatch
        raise VerificationError(f"pixel ({y}, {x}): oracle {expected}, circuit {got}")
    return run.image
