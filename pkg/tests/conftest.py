"""Shared fixture helpers: synthetic images, sidecar writing, CLI runs."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import numpy as np
from PIL import Image

from alg.raster import CANONICAL_HEIGHT, CANONICAL_WIDTH, RasterImage


def solid_image(rgb, height=CANONICAL_HEIGHT, width=CANONICAL_WIDTH) -> RasterImage:
    px = np.zeros((height, width, 3), dtype=np.uint8)
    px[:] = rgb
    return RasterImage(px)


def random_image(rng, height, width) -> RasterImage:
    return RasterImage(rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8))


def draw_line_edges(rho: float, theta_deg: float) -> np.ndarray:
    """Boolean canonical edge map of the band |x cos + y sin - rho| <= 0.5."""
    theta = np.deg2rad(theta_deg)
    xs = np.arange(CANONICAL_WIDTH)
    ys = np.arange(CANONICAL_HEIGHT)
    dist = np.abs(xs[None, :] * np.cos(theta) + ys[:, None] * np.sin(theta) - rho)
    return dist <= 0.5


def save_png(path, image: RasterImage) -> None:
    Image.fromarray(image.pixels).save(path)


def write_sidecar(directory, name: str, doc: dict) -> str:
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
    return path


def run_alg(*args, env_extra=None, cwd=None) -> subprocess.CompletedProcess:
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "alg", *args],
        capture_output=True, env=env, cwd=cwd)


def build_guidance_fixtures(root) -> dict:
    """Input image + annotation and a 3-record guidance database.

    The input annotation peaks in the Front octant; every database record
    peaks in the Left octant, so lighting advice must adopt the left light.
    """
    root = str(root)
    db_dir = os.path.join(root, "db")
    os.makedirs(db_dir, exist_ok=True)

    px = np.zeros((CANONICAL_HEIGHT, CANONICAL_WIDTH, 3), dtype=np.uint8)
    px[:142] = (90, 140, 220)
    px[142:] = (60, 160, 70)
    input_image = os.path.join(root, "input.png")
    save_png(input_image, RasterImage(px))

    front = [0.0] * 36
    front[0] = 5.0               # theta 5 -> Front octant
    input_annotation = write_sidecar(root, "input.json", {
        "id": "input",
        "embedding": [1.0, 0.0, 0.0, 0.0],
        "azimuth_intensity": front,
    })

    left = [0.0] * 36
    left[27] = 3.0               # theta 275 -> Left octant
    specs = [("a", [1.0, 0.0, 0.0, 0.0], 5.1),
             ("b", [0.9, 0.1, 0.0, 0.0], 7.3),
             ("c", [0.0, 1.0, 0.0, 0.0], 6.0)]
    for i, (name, vec, score) in enumerate(specs):
        q = np.zeros((CANONICAL_HEIGHT, CANONICAL_WIDTH, 3), dtype=np.uint8)
        q[:] = (40 * (i + 1), 80, 200 - 40 * i)
        q[284:, :] = (20, 30, 40)
        save_png(os.path.join(db_dir, name + ".png"), RasterImage(q))
        write_sidecar(db_dir, name + ".json", {
            "id": name,
            "embedding": vec,
            "aesthetic_score": score,
            "azimuth_intensity": left,
        })

    return {
        "input_image": input_image,
        "input_annotation": input_annotation,
        "db_dir": db_dir,
        "index": os.path.join(root, "index.bin"),
        "profiles": os.path.join(root, "profiles.json"),
    }
