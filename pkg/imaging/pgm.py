#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
pgm.py - Plain-text PGM (P2) reader and writer for NEQR images
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Union

import numpy as np

from imaging.neqr import MAX_COLOR_BITS, NEQRImage
from utils.errors import ImageFormatError

logger = logging.getLogger(__name__)

_COMMENT = re.compile(r"#[^\n]*")


def parse_pgm(text: str) -> NEQRImage:
    """
    Parse P2 text into an image.

    Raises:
        ImageFormatError: bad magic, malformed header, non-square or
            non-power-of-two side, maxval not 2^q - 1, wrong sample count
    """
    tokens = _COMMENT.sub(" ", text).split()
    if not tokens or tokens[0] != "P2":
        raise ImageFormatError("not a plain PGM file (expected 'P2' magic)")
    if len(tokens) < 4:
        raise ImageFormatError("malformed PGM header: need width, height and maxval")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
        samples = np.array([int(t) for t in tokens[4:]], dtype=np.int64)
    except ValueError as exc:
        raise ImageFormatError(f"malformed PGM header or samples: {exc}") from None

    if width != height:
        raise ImageFormatError(f"image must be square, got {width}x{height}")
    if width < 1 or width & (width - 1):
        raise ImageFormatError(f"image side must be a power of two, got {width}")
    q = (maxval + 1).bit_length() - 1
    if maxval < 1 or (1 << q) - 1 != maxval or q > MAX_COLOR_BITS:
        raise ImageFormatError(f"maxval must be 2^q - 1 with 1 <= q <= {MAX_COLOR_BITS}, got {maxval}")
    if samples.size != width * height:
        raise ImageFormatError(f"expected {width * height} samples, got {samples.size}")
    if samples.size and (samples.min() < 0 or samples.max() > maxval):
        raise ImageFormatError(f"sample outside [0, {maxval}]")
    return NEQRImage(width.bit_length() - 1, q, samples)


def format_pgm(image: NEQRImage) -> str:
    """Canonical P2 text: one header line per field, one line per row."""
    rows = [" ".join(str(int(v)) for v in row) for row in image.to_array()]
    return "\n".join(["P2", f"{image.side} {image.side}", str(image.max_color), *rows]) + "\n"


def load_pgm(path: Union[str, Path]) -> NEQRImage:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise ImageFormatError(f"cannot read {path}: {exc}") from exc
    image = parse_pgm(text)
    logger.debug("loaded %s: side=%d q=%d", path, image.side, image.q)
    return image


def save_pgm(image: NEQRImage, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_pgm(image), encoding="ascii")
    logger.debug("saved %s: side=%d q=%d", path, image.side, image.q)
    return path
