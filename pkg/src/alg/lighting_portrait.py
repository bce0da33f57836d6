"""Portrait lighting: order-2 spherical-harmonic rendering on a 256x256
disk, illumination-center lookup and classification against the three
canonical light types."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config

SH_CANVAS = 256

# (row, col) canonical centers on the 256x256 canvas.
LIGHT_CENTERS = (
    ("Rembrandt", (82.0, 172.0)),
    ("Butterfly", (63.0, 127.0)),
    ("Lower", (191.0, 127.0)),
)

_MAX_DIST = float(SH_CANVAS * np.sqrt(2.0))

# Real SH basis constants, coefficient order
# (0,0),(1,-1),(1,0),(1,1),(2,-2),(2,-1),(2,0),(2,1),(2,2).
_C00 = 0.282095
_C1 = 0.488603
_C2A = 1.092548
_C20 = 0.315392
_C22 = 0.546274


@dataclass(frozen=True)
class IlluminationMap:
    values: np.ndarray
    mask: np.ndarray


@dataclass(frozen=True)
class PortraitLightReport:
    light_type: str
    center: tuple[int, int]
    similarity: float


def render_sh(coeffs) -> IlluminationMap:
    """Evaluate the 9-term SH expansion over the front unit hemisphere,
    orthographically projected onto the 256x256 canvas."""
    c = np.asarray(coeffs, dtype=np.float64)
    if c.shape != (9,):
        raise ValueError("expected 9 spherical-harmonic coefficients")
    if not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be finite")

    cols = np.arange(SH_CANVAS, dtype=np.float64)
    x = (cols[None, :] - 127.5) / 127.5
    y = (127.5 - cols[:, None]) / 127.5
    rsq = x * x + y * y
    mask = rsq <= 1.0
    z = np.sqrt(np.maximum(1.0 - rsq, 0.0))

    basis = np.stack([
        np.full_like(z, _C00),
        _C1 * y * np.ones_like(z),
        _C1 * z,
        _C1 * x * np.ones_like(z),
        _C2A * x * y * np.ones_like(z),
        _C2A * y * z,
        _C20 * (3.0 * z * z - 1.0),
        _C2A * x * z,
        _C22 * (x * x - y * y) * np.ones_like(z),
    ])
    values = np.einsum("k,kij->ij", c, basis)
    values[~mask] = 0.0
    return IlluminationMap(values, mask)


def illumination_center(ill: IlluminationMap) -> tuple[int, int]:
    """Argmax over valid cells; ties go to the smallest row, then column."""
    if not np.any(ill.mask):
        raise ValueError("illumination map has no valid cells")
    masked = np.where(ill.mask, ill.values, -np.inf)
    flat = int(np.argmax(masked))
    return flat // SH_CANVAS, flat % SH_CANVAS


def classify_portrait_light(center: tuple[int, int]) -> PortraitLightReport:
    """Nearest canonical light center; similarity = 1 - d / (256 sqrt 2)."""
    row, col = center
    best_name = None
    best_dist = np.inf
    for name, (cr, cc) in LIGHT_CENTERS:
        dist = float(np.hypot(row - cr, col - cc))
        if dist < best_dist:
            best_name, best_dist = name, dist
    return PortraitLightReport(best_name, (int(row), int(col)), 1.0 - best_dist / _MAX_DIST)


@dataclass(frozen=True)
class PortraitLightAdvice:
    keep: bool
    sentence: str


def portrait_light_advice(report: PortraitLightReport, threshold: float = 0.9) -> PortraitLightAdvice:
    """Keep when similarity is strictly above the threshold, otherwise ask
    to strengthen the light type's preset characteristics."""
    sentences = config.load_sentences()
    description = sentences[f"light_desc.{report.light_type}"]
    if report.similarity > threshold:
        text = sentences["portrait_light.keep"].format(light_type=report.light_type)
        return PortraitLightAdvice(True, text)
    text = sentences["portrait_light.strengthen"].format(
        light_type=report.light_type, description=description)
    return PortraitLightAdvice(False, text)
