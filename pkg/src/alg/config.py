"""Configuration loading: palette geometry, level thresholds, tolerances and
sentence templates, all plain key=value text files.

Files ship inside the package under data/; setting the ALG_CONFIG environment
variable to a directory overrides any shipped file by name (templates live in
a templates/ subdirectory on both sides).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

ENV_CONFIG_DIR = "ALG_CONFIG"


def config_path(name: str) -> str:
    """Resolve a config file name, preferring the ALG_CONFIG directory."""
    override_dir = os.environ.get(ENV_CONFIG_DIR)
    if override_dir:
        candidate = os.path.join(override_dir, name)
        if os.path.isfile(candidate):
            return candidate
    return os.path.join(_DATA_DIR, name)


def load_kv(name: str) -> dict[str, str]:
    """Parse a key = value config file; '#' lines are comments."""
    out: dict[str, str] = {}
    path = config_path(name)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


# === Palette geometry ===

def load_palettes(name: str = "palettes.cfg") -> dict[str, tuple[tuple[float, float], ...]]:
    """Template id -> ((offset, width), ...) in degrees; N maps to ()."""
    palettes: dict[str, tuple[tuple[float, float], ...]] = {}
    for tid, spec in load_kv(name).items():
        sectors = []
        if spec:
            for part in spec.split(","):
                offset_s, _, width_s = part.partition(":")
                sectors.append((float(offset_s), float(width_s)))
        palettes[tid] = tuple(sectors)
    return palettes


# === Colorfulness scale ===

def load_colorfulness(name: str = "colorfulness.cfg") -> tuple[tuple[float, ...], tuple[str, ...]]:
    """Return (thresholds, level names); len(names) == len(thresholds) + 1."""
    kv = load_kv(name)
    thresholds = tuple(float(t) for t in kv["thresholds"].split(","))
    names = tuple(kv[f"level_{i}"] for i in range(1, len(thresholds) + 2))
    return thresholds, names


# === Tolerances ===

@dataclass(frozen=True)
class Tolerances:
    """Analyzer defaults and the adjust-vs-keep comparison thresholds."""

    s_min: float = 0.05
    v_min: float = 0.05
    smoothness_lambda: float = 0.5
    colorfulness_levels: int = 0
    lighting_degrees: float = 5.0
    tilt_degrees: float = 3.0
    shift_pixels: float = 15.0
    subject_offset_pixels: float = 32.0
    portrait_similarity: float = 0.9
    well_placed_pixels: float = 32.0
    edge_threshold: float = 0.25
    hough_k: int = 2
    fov_degrees: float = 90.0
    search_k: int = 10


def load_tolerances(name: str = "tolerances.cfg") -> Tolerances:
    kv = load_kv(name)
    kwargs = {}
    for field, default in Tolerances.__dataclass_fields__.items():
        if field in kv:
            kwargs[field] = type(default.default)(kv[field])
    return Tolerances(**kwargs)


# === Sentence templates ===

def load_sentences(name: str = "sentences.cfg") -> dict[str, str]:
    return load_kv(name)


# === Photography template specs ===

def template_spec_path(name: str) -> str:
    """Resolve a template by built-in name or explicit .json path."""
    if os.path.isfile(name):
        return name
    path = config_path(os.path.join("templates", name + ".json"))
    if not os.path.isfile(path):
        raise FileNotFoundError(f"unknown template: {name}")
    return path


def load_template_json(name: str) -> dict:
    with open(template_spec_path(name), encoding="utf-8") as fh:
        return json.load(fh)
