#!/usr/bin/env python3
# Copyright (C) 2026 The Mirror Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the image fixtures under assets/fixtures.

Source: the "astronaut" portrait bundled with scikit-image (NASA, public
domain). Grayscale conversion uses the same integer luma as
mirror::vision::rgb_to_gray so results are reproducible bit for bit.

    python3 tools/make_fixture_frames.py assets/fixtures
"""

import pathlib
import sys

import numpy as np
from PIL import Image
from skimage import data


def gray(rgb):
    rgb = rgb.astype(np.int64)
    return ((299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000).astype(np.uint8)


def resize(img, w, h):
    return np.asarray(Image.fromarray(img).resize((w, h), Image.BILINEAR))


def write_pgm(path, img):
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def main(out_dir):
    out = pathlib.Path(out_dir)
    (out / "frames").mkdir(parents=True, exist_ok=True)
    portrait = gray(data.astronaut())  # 512x512, face near (177..272, 66..161)

    # Face crop for the end-to-end golden run.
    write_pgm(out / "face_fixture.pgm", resize(portrait[50:178, 160:288], 96, 96))

    small = resize(portrait, 320, 320)
    frames = {
        "frame_00.pgm": small[0:240, :],
        "frame_01.pgm": small[8:248, :],
        "frame_02.pgm": np.clip(small[0:240, :].astype(np.int32) * 3 // 4 + 20, 0, 255).astype(np.uint8),
        "frame_03.pgm": np.ascontiguousarray(small[0:240, ::-1]),
        "frame_04.pgm": resize(portrait[0:384, 64:576 - 64], 320, 240),
        # No face: the lower half of the portrait.
        "frame_05.pgm": small[80:320, :],
    }
    for name, img in frames.items():
        write_pgm(out / "frames" / name, np.ascontiguousarray(img))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "assets/fixtures")
