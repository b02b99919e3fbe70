#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
neqr.py - NEQR image model, basis-state encoding and pixel neighbourhoods

An image of side 2^m with q-bit grey levels is the superposition of basis
states |Y>|X>|C>. For per-pixel simulation only the basis index matters:

    index = (Y << (m + q)) | (X << q) | C
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Tuple

import numpy as np

from utils.errors import ImageFormatError

MAX_COLOR_BITS = 16


class PixelNeighborhood(NamedTuple):
    """Colours at (y,x), (y+1,x), (y,x+1), (y+1,x+1)."""
    c_yx: int
    c_y1x: int
    c_yx1: int
    c_y1x1: int


@dataclass(frozen=True)
class NEQRImage:
    """
    Square grey-level image of side 2^m with q-bit pixels.

    Attributes:
        m: Position bit-width
        q: Colour bit-width
        pixels: Row-major read-only array of length 2^(2m)
    """
    m: int
    q: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.m < 0:
            raise ImageFormatError(f"position width m must be >= 0, got {self.m}")
        if not 1 <= self.q <= MAX_COLOR_BITS:
            raise ImageFormatError(f"colour width q must be in 1..{MAX_COLOR_BITS}, got {self.q}")
        pixels = np.asarray(self.pixels, dtype=np.int64).reshape(-1).copy()
        if pixels.size != 1 << (2 * self.m):
            raise ImageFormatError(f"expected {1 << (2 * self.m)} pixels for m={self.m}, got {pixels.size}")
        if pixels.size and (pixels.min() < 0 or pixels.max() > self.max_color):
            raise ImageFormatError(f"pixel values must lie in [0, {self.max_color}]")
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_array(cls, array, q: int) -> "NEQRImage":
        """Build from a square 2-D array whose side is a power of two."""
        array = np.asarray(array)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ImageFormatError(f"image must be square, got shape {array.shape}")
        side = array.shape[0]
        if side < 1 or side & (side - 1):
            raise ImageFormatError(f"image side must be a power of two, got {side}")
        return cls(side.bit_length() - 1, q, array.reshape(-1))

    @property
    def side(self) -> int:
        return 1 << self.m

    @property
    def max_color(self) -> int:
        return (1 << self.q) - 1

    def to_array(self) -> np.ndarray:
        return self.pixels.reshape(self.side, self.side)

    def pixel(self, y: int, x: int) -> int:
        self._check(y, x)
        return int(self.pixels[y * self.side + x])

    def coordinates(self) -> Iterator[Tuple[int, int]]:
        for y in range(self.side):
            for x in range(self.side):
                yield y, x

    def _check(self, y: int, x: int) -> None:
        if not (0 <= y < self.side and 0 <= x < self.side):
            raise ImageFormatError(f"coordinate ({y}, {x}) outside a {self.side}x{self.side} image")

    def __eq__(self, other) -> bool:
        if not isinstance(other, NEQRImage):
            return NotImplemented
        return self.m == other.m and self.q == other.q and np.array_equal(self.pixels, other.pixels)

    def __hash__(self) -> int:
        return hash((self.m, self.q, self.pixels.tobytes()))


def encode_pixel_basis_index(image: NEQRImage, y: int, x: int) -> int:
    """Basis index of |y>|x>|C(y,x)>, Y most significant."""
    color = image.pixel(y, x)
    return (y << (image.m + image.q)) | (x << image.q) | color


def decode_pixel_basis_index(index: int, m: int, q: int) -> Tuple[int, int, int]:
    """Inverse of encode_pixel_basis_index: returns (y, x, color)."""
    if not 0 <= index < 1 << (2 * m + q):
        raise ImageFormatError(f"basis index {index} out of range for m={m}, q={q}")
    color = index & ((1 << q) - 1)
    x = (index >> q) & ((1 << m) - 1)
    y = index >> (m + q)
    return y, x, color


def neighborhood(image: NEQRImage, y: int, x: int) -> PixelNeighborhood:
    """Colours of the 2x2 block anchored at (y, x); the last row and column are replicated."""
    image._check(y, x)
    y1 = min(y + 1, image.side - 1)
    x1 = min(x + 1, image.side - 1)
    return PixelNeighborhood(image.pixel(y, x), image.pixel(y1, x), image.pixel(y, x1), image.pixel(y1, x1))


def neighborhood_arrays(image: NEQRImage, ys: np.ndarray, xs: np.ndarray) -> Tuple[np.ndarray, ...]:
    """Vectorised neighborhood(): four colour arrays for coordinate arrays ys, xs."""
    grid = image.to_array()
    ys = np.asarray(ys, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    if ys.size and (ys.min() < 0 or ys.max() >= image.side or xs.min() < 0 or xs.max() >= image.side):
        raise ImageFormatError("neighbourhood coordinates outside the image")
    y1 = np.minimum(ys + 1, image.side - 1)
    x1 = np.minimum(xs + 1, image.side - 1)
    return grid[ys, xs], grid[y1, xs], grid[ys, x1], grid[y1, x1]


SYNTHETIC_KINDS = ("constant", "ramp", "checkerboard")


def synthetic_image(kind: str, m: int, q: int, level: Optional[int] = None) -> NEQRImage:
    """
    Small test images: constant (every pixel `level`, default mid-grey),
    ramp (rows rise from 0 to max colour) or checkerboard (0 / max colour).
    """
    side = 1 << m
    top = (1 << q) - 1
    if kind == "constant":
        value = top // 2 if level is None else level
        grid = np.full((side, side), value, dtype=np.int64)
    elif kind == "ramp":
        rows = np.arange(side, dtype=np.int64) * top // max(side - 1, 1)
        grid = np.repeat(rows[:, None], side, axis=1)
    elif kind == "checkerboard":
        ys, xs = np.indices((side, side))
        grid = ((ys + xs) % 2) * top
    else:
        raise ImageFormatError(f"unknown synthetic image {kind!r}; choose from {', '.join(SYNTHETIC_KINDS)}")
    return NEQRImage(m, q, grid)
