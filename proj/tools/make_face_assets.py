#!/usr/bin/env python3
"""Generate the bundled synthetic face images (32x32, 8-bit binary PGM).

Each face is a shaded oval with two eyes, brows, a nose and a mouth whose
positions, sizes and intensities vary smoothly from image to image, plus a
little pixel noise. Output is deterministic for a given seed.

usage: make_face_assets.py [--out assets/faces] [--count 24] [--seed 7]
"""

import argparse
import pathlib

import numpy as np

SIZE = 32


def blob(yy, xx, cy, cx, ry, rx):
    return np.exp(-(((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2))


def face(rng):
    yy, xx = np.mgrid[0:SIZE, 0:SIZE].astype(float)
    cy = 16 + rng.normal(0, 0.1)
    cx = 16 + rng.normal(0, 0.1)
    head_ry = 12.5 + rng.normal(0, 0.1)
    head_rx = 10.0 + rng.normal(0, 0.1)
    skin = 0.62 + rng.normal(0, 0.12)
    light = rng.normal(0, 0.02)
    shade = rng.normal(0, 0.02)

    head = ((yy - cy) / head_ry) ** 2 + ((xx - cx) / head_rx) ** 2
    img = np.where(head <= 1.0, skin * (1.0 - 0.25 * head), 0.12)
    img = img + (light * (xx - cx) + shade * (yy - cy)) * (head <= 1.0)

    eye_y = cy - 3.0 + rng.normal(0, 0.08)
    eye_dx = 4.2 + rng.normal(0, 0.06)
    eye_r = 1.3 + rng.normal(0, 0.06)
    eye_dark = 0.45 + rng.normal(0, 0.3)
    for side in (-1, 1):
        img -= eye_dark * blob(yy, xx, eye_y, cx + side * eye_dx, eye_r, eye_r * 1.3)
        img -= 0.2 * blob(yy, xx, eye_y - 2.6, cx + side * eye_dx, 0.6, 2.2 + rng.normal(0, 0.08))

    img -= 0.12 * blob(yy, xx, cy + 1.5, cx, 2.2, 0.9)
    mouth_y = cy + 6.0 + rng.normal(0, 0.1)
    mouth_w = 3.2 + rng.normal(0, 0.08)
    img -= (0.35 + rng.normal(0, 0.3)) * blob(yy, xx, mouth_y, cx, 0.8 + abs(rng.normal(0, 0.08)), mouth_w)

    img += rng.normal(0, 0.004, size=img.shape)
    return np.clip(img, 0.0, 1.0)


def write_pgm(path, img):
    data = np.round(img * 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"P5\n# synthetic face\n%d %d\n255\n" % (SIZE, SIZE))
        f.write(data.tobytes())


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="assets/faces")
    parser.add_argument("--count", type=int, default=24)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    for i in range(args.count):
        write_pgm(out / f"face_{i:02d}.pgm", face(rng))


if __name__ == "__main__":
    main()
