#!/usr/bin/env python3
"""Regenerate the sample-image corpus under tests/data/.

The four images stand in for the deer / cameraman / scenery / lena corpus at
the same sizes. Sources are the public-domain / CC0 images bundled with
scikit-image, converted to 8-bit grayscale, center-cropped to a square and
resampled to the target size.
"""
import argparse
import pathlib

import numpy as np
import skimage.data
from skimage.color import rgb2gray
from skimage.transform import resize

CORPUS = {
    # name: (scikit-image loader, side length)
    "deer1024": (skimage.data.chelsea, 1024),
    "cameraman192": (skimage.data.camera, 192),
    "scenery512": (skimage.data.rocket, 512),
    "lena512": (skimage.data.astronaut, 512),
}


def to_gray(img):
    if img.ndim == 3:
        return rgb2gray(img[..., :3]) * 255.0
    return img.astype(np.float64)


def square(img, side):
    h, w = img.shape
    m = min(h, w)
    y0, x0 = (h - m) // 2, (w - m) // 2
    img = img[y0:y0 + m, x0:x0 + m]
    out = resize(img, (side, side), anti_aliasing=True, preserve_range=True)
    return np.clip(np.round(out), 0, 255).astype(np.uint8)


def write_pgm(path, img):
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (loader, side) in CORPUS.items():
        write_pgm(out / f"{name}.pgm", square(to_gray(loader()), side))
        print(f"wrote {name}.pgm ({side}x{side})")


if __name__ == "__main__":
    main()
