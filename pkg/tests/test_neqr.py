#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
test_neqr.py - NEQR images and PGM files
"""

import numpy as np
import pytest

from imaging.neqr import (
    SYNTHETIC_KINDS,
    NEQRImage,
    decode_pixel_basis_index,
    encode_pixel_basis_index,
    neighborhood,
    neighborhood_arrays,
    synthetic_image,
)
from imaging.pgm import format_pgm, load_pgm, parse_pgm, save_pgm
from utils.errors import ImageFormatError


# =============================================================================
# IMAGES
# =============================================================================

def test_from_array_infers_m():
    image = NEQRImage.from_array([[0, 1], [2, 3]], q=2)
    assert (image.m, image.side, image.max_color) == (1, 2, 3)
    assert image.pixel(1, 0) == 2
    assert list(image.coordinates()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("array, q", [
    ([[0, 1, 2]], 2),                       # not square
    (np.zeros((3, 3), dtype=int), 2),       # side not a power of two
    ([[0, 4], [0, 0]], 2),                  # colour above 2^q - 1
    ([[0, -1], [0, 0]], 2),                 # negative colour
    ([[0, 0], [0, 0]], 17),                 # q out of range
])
def test_invalid_images_are_rejected(array, q):
    with pytest.raises(ImageFormatError):
        NEQRImage.from_array(array, q)


def test_image_pixels_are_read_only():
    image = NEQRImage.from_array([[1, 2], [3, 0]], q=2)
    with pytest.raises(ValueError):
        image.pixels[0] = 3


def test_single_pixel_image_is_allowed():
    image = NEQRImage(0, 4, [9])
    assert image.side == 1
    assert neighborhood(image, 0, 0) == (9, 9, 9, 9)


def test_basis_index_layout():
    image = NEQRImage.from_array([[0, 1], [2, 3]], q=2)
    index = encode_pixel_basis_index(image, 1, 0)
    # |y=1>|x=0>|c=2> with y most significant
    assert index == 0b1_0_10
    assert decode_pixel_basis_index(index, 1, 2) == (1, 0, 2)
    with pytest.raises(ImageFormatError):
        decode_pixel_basis_index(1 << 4, 1, 2)


def test_neighborhood_replicates_the_last_row_and_column():
    image = NEQRImage.from_array(np.arange(16).reshape(4, 4), q=4)
    assert neighborhood(image, 1, 1) == (5, 9, 6, 10)
    assert neighborhood(image, 3, 3) == (15, 15, 15, 15)
    assert neighborhood(image, 3, 0) == (12, 12, 13, 13)
    arrays = neighborhood_arrays(image, np.array([1, 3]), np.array([1, 3]))
    assert [int(a[0]) for a in arrays] == [5, 9, 6, 10]
    with pytest.raises(ImageFormatError):
        neighborhood(image, 4, 0)


@pytest.mark.parametrize("kind", SYNTHETIC_KINDS)
def test_synthetic_images_fit_the_colour_range(kind):
    image = synthetic_image(kind, 2, 4)
    assert image.side == 4
    assert 0 <= image.pixels.min() <= image.pixels.max() <= 15


def test_synthetic_ramp_and_unknown_kind():
    assert synthetic_image("ramp", 2, 4).to_array()[:, 0].tolist() == [0, 5, 10, 15]
    assert synthetic_image("constant", 1, 4, level=3).pixels.tolist() == [3, 3, 3, 3]
    with pytest.raises(ImageFormatError):
        synthetic_image("noise", 2, 4)


# =============================================================================
# PGM
# =============================================================================

def test_fixture_pgm_loads(fixtures_dir):
    image = load_pgm(fixtures_dir / "ramp4.pgm")
    assert (image.m, image.q) == (2, 4)
    assert image.to_array()[2].tolist() == [0, 4, 8, 12]


def test_pgm_save_and_load(tmp_path):
    image = NEQRImage.from_array([[0, 255], [17, 128]], q=8)
    path = save_pgm(image, tmp_path / "out.pgm")
    assert load_pgm(path) == image
    assert format_pgm(image).splitlines()[:3] == ["P2", "2 2", "255"]


def test_pgm_comments_and_free_layout():
    image = parse_pgm("P2 # plain\n2 2 # size\n3\n0 1 2\n3\n")
    assert image.pixels.tolist() == [0, 1, 2, 3]


@pytest.mark.parametrize("text", [
    "P5\n2 2\n3\n0 1 2 3\n",        # binary magic
    "P2\n2 2\n",                   # short header
    "P2\n2 2\n4\n0 1 2 3\n",        # maxval not 2^q - 1
    "P2\n2 1\n3\n0 1\n",            # not square
    "P2\n2 2\n3\n0 1 2\n",          # missing sample
    "P2\n2 2\n3\n0 1 2 9\n",        # sample above maxval
    "P2\n2 x\n3\n0 1 2 3\n",        # malformed number
])
def test_bad_pgm_is_rejected(text):
    with pytest.raises(ImageFormatError):
        parse_pgm(text)


def test_missing_pgm_file(tmp_path):
    with pytest.raises(ImageFormatError):
        load_pgm(tmp_path / "absent.pgm")
