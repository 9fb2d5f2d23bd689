#!/usr/bin/env python3
"""Regenerates the fixture files under tests/data/.

The outputs are committed; rerunning with the same numpy version reproduces them.
"""
import pathlib

import numpy as np
from PIL import Image
from sklearn.datasets import load_sample_image

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def write_csv(name, pts):
    with open(OUT / name, "w") as f:
        for row in pts:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def write_ppm(name, rgb):
    h, w, _ = rgb.shape
    with open(OUT / name, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode())
        f.write(rgb.astype(np.uint8).tobytes())


def two_moons(n, rng, noise=0.05):
    n_out = n // 2
    n_in = n - n_out
    t_out = np.linspace(0, np.pi, n_out)
    t_in = np.linspace(0, np.pi, n_in)
    outer = np.stack([np.cos(t_out), np.sin(t_out)], axis=1)
    inner = np.stack([1 - np.cos(t_in), 1 - np.sin(t_in) - 0.5], axis=1)
    pts = np.concatenate([outer, inner]) + noise * rng.standard_normal((n, 2))
    return pts


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20230613)

    # Gradient-flow fixture: Gaussian blob flowing onto two moons.
    write_csv("flow_source.csv", rng.normal((-2.0, -2.0), 0.2, size=(100, 2)))
    write_csv("flow_target.csv", two_moons(100, rng))

    # Slicing-density fixture: an elongated cloud against a rotated,
    # shifted copy, giving a bimodal energy-based slicing density.
    base = rng.standard_normal((200, 2)) * np.array([1.0, 0.25])
    rot = np.array([[np.cos(1.0), -np.sin(1.0)], [np.sin(1.0), np.cos(1.0)]])
    write_csv("density_mu.csv", base)
    write_csv("density_nu.csv", (rng.standard_normal((200, 2)) * np.array([1.0, 0.25])) @ rot.T + np.array([0.3, 0.0]))

    # Color-transfer fixtures.
    red = np.zeros((32, 32, 3), dtype=np.uint8)
    red[..., 0] = 255
    blue = np.zeros((32, 32, 3), dtype=np.uint8)
    blue[..., 2] = 255
    write_ppm("red32.ppm", red)
    write_ppm("blue32.ppm", blue)
    for name, out in (("china.jpg", "photo_a.ppm"), ("flower.jpg", "photo_b.ppm")):
        img = Image.fromarray(load_sample_image(name)).resize((24, 24), Image.BILINEAR)
        write_ppm(out, np.asarray(img))


if __name__ == "__main__":
    main()
