#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
oracle.py - Classical fixed-point bilinear interpolation and modular arithmetic

These functions are the ground truth every circuit is checked against.

With N = 2^n and fractional weights 0 <= w_y, w_x < N:

    C = ((N-w_y)(N-w_x) c_yx + w_y (N-w_x) c_y1x + (N-w_y) w_x c_yx1 + w_y w_x c_y1x1) >> 2n

The shift is a floor division since every term is non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from imaging.neqr import NEQRImage, PixelNeighborhood, neighborhood_arrays
from utils.errors import SpecError


@dataclass(frozen=True)
class FixedPointWeights:
    """Fractional position bits and their complements against 2^n."""
    w_y: int
    w_x: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SpecError(f"scale exponent n must be >= 1, got {self.n}")
        for name, w in (("w_y", self.w_y), ("w_x", self.w_x)):
            if not 0 <= w < 1 << self.n:
                raise SpecError(f"{name}={w} outside [0, {(1 << self.n) - 1}] for n={self.n}")

    @property
    def complement_y(self) -> int:
        return (1 << self.n) - self.w_y

    @property
    def complement_x(self) -> int:
        return (1 << self.n) - self.w_x

    def products(self) -> Tuple[int, int, int, int]:
        """Weights of c_yx, c_y1x, c_yx1, c_y1x1; they sum to 2^(2n)."""
        return (
            self.complement_y * self.complement_x,
            self.w_y * self.complement_x,
            self.complement_y * self.w_x,
            self.w_y * self.w_x,
        )


def bilerp_color(neigh: PixelNeighborhood, w_y: int, w_x: int, n: int) -> int:
    """
    Fixed-point bilinear colour of one output pixel.

    Example:
        >>> bilerp_color(PixelNeighborhood(0, 4, 8, 12), 1, 1, 1)
        6
    """
    weights = FixedPointWeights(w_y, w_x, n)
    total = sum(w * int(c) for w, c in zip(weights.products(), neigh))
    return total >> (2 * n)


def bilerp_color_array(c_yx, c_y1x, c_yx1, c_y1x1, w_y, w_x, n: int) -> np.ndarray:
    """Vectorised bilerp_color over equal-shaped integer arrays."""
    full = 1 << n
    w_y = np.asarray(w_y, dtype=np.int64)
    w_x = np.asarray(w_x, dtype=np.int64)
    if w_y.size and (w_y.min() < 0 or w_y.max() >= full or w_x.min() < 0 or w_x.max() >= full):
        raise SpecError(f"weights must lie in [0, {full - 1}] for n={n}")
    cy, cx = full - w_y, full - w_x
    total = (cy * cx * np.asarray(c_yx, dtype=np.int64)
             + w_y * cx * np.asarray(c_y1x, dtype=np.int64)
             + cy * w_x * np.asarray(c_yx1, dtype=np.int64)
             + w_y * w_x * np.asarray(c_y1x1, dtype=np.int64))
    return total >> (2 * n)


# =============================================================================
# IMAGE-LEVEL ORACLES
# =============================================================================

def scale_down_sources(m: int, n: int, subpixel: Tuple[int, int] = (0, 0)) -> Tuple[np.ndarray, np.ndarray]:
    """Source coordinates (ys, xs) driving each scale-down output pixel, row-major."""
    sy, sx = subpixel
    if not (0 <= sy < 1 << n and 0 <= sx < 1 << n):
        raise SpecError(f"subpixel offset {subpixel} outside [0, {(1 << n) - 1}]")
    side = 1 << (m - n)
    ybar, xbar = np.divmod(np.arange(side * side, dtype=np.int64), side)
    return (ybar << n) + sy, (xbar << n) + sx


def oracle_scale_down(image: NEQRImage, n: int, subpixel: Tuple[int, int] = (0, 0)) -> NEQRImage:
    """
    Shrink by 2^n: output (ybar, xbar) is the interpolated colour of source
    pixel (ybar*2^n + sy, xbar*2^n + sx) with weights (sy, sx).
    """
    if not 1 <= n <= image.m:
        raise SpecError(f"scale-down needs 1 <= n <= m (n={n}, m={image.m})")
    ys, xs = scale_down_sources(image.m, n, subpixel)
    colors = neighborhood_arrays(image, ys, xs)
    out = bilerp_color_array(*colors, ys & ((1 << n) - 1), xs & ((1 << n) - 1), n)
    return NEQRImage(image.m - n, image.q, out)


def oracle_scale_up(image: NEQRImage, n: int) -> NEQRImage:
    """Enlarge by 2^n: output (Y, X) interpolates around (Y >> n, X >> n) with the low n bits as weights."""
    if n < 1:
        raise SpecError(f"scale-up needs n >= 1, got {n}")
    side = 1 << (image.m + n)
    ybig, xbig = np.divmod(np.arange(side * side, dtype=np.int64), side)
    colors = neighborhood_arrays(image, ybig >> n, xbig >> n)
    mask = (1 << n) - 1
    out = bilerp_color_array(*colors, ybig & mask, xbig & mask, n)
    return NEQRImage(image.m + n, image.q, out)


# =============================================================================
# MODULAR ARITHMETIC
# =============================================================================

def _check_operands(a: int, b: int, n: int) -> None:
    if n < 1:
        raise SpecError(f"width n must be >= 1, got {n}")
    for value in (a, b):
        if not 0 <= value < 1 << n:
            raise SpecError(f"operand {value} outside [0, {(1 << n) - 1}]")


def mod_add(a: int, b: int, n: int) -> int:
    _check_operands(a, b, n)
    return (a + b) % (1 << n)


def mod_sub(a: int, b: int, n: int) -> int:
    """(a - b) mod 2^n."""
    _check_operands(a, b, n)
    return (a - b) % (1 << n)


def mod_mul(a: int, b: int, n: int) -> int:
    """Exact product, which fits in 2n bits."""
    _check_operands(a, b, n)
    return a * b
