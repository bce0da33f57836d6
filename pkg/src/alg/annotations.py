"""Annotation sidecar parsing and validation.

A sidecar is a JSON document carrying externally computed model outputs:
{id, embedding?, aesthetic_score?, faces?, sh_coeffs?, azimuth_intensity?,
semantic_lines?}. Unknown fields are ignored; present fields must validate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .composition_landscape import LineSegment, segment_to_polar, to_segment
from .composition_portrait import FaceBox
from .raster import CANONICAL_HEIGHT, CANONICAL_WIDTH


class AnnotationError(Exception):
    """Raised when a sidecar document fails validation."""


@dataclass(frozen=True)
class AnnotationSidecar:
    id: str
    embedding: np.ndarray | None = None
    aesthetic_score: float | None = None
    faces: tuple[FaceBox, ...] | None = None
    sh_coeffs: np.ndarray | None = None
    azimuth_intensity: np.ndarray | None = None
    semantic_lines: tuple[LineSegment, ...] | None = None


def _as_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise AnnotationError(f"{what} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise AnnotationError(f"{what} must be an integer")


def _finite_array(values, what: str) -> np.ndarray:
    try:
        arr = np.asarray(values, dtype=np.float64)
    except (TypeError, ValueError):
        raise AnnotationError(f"{what} must be an array of numbers") from None
    if arr.ndim != 1:
        raise AnnotationError(f"{what} must be a flat array")
    if not np.all(np.isfinite(arr)):
        raise AnnotationError(f"{what} has non-finite entries")
    return arr


def parse_annotation(doc) -> AnnotationSidecar:
    """Validate a decoded JSON document into a sidecar."""
    if not isinstance(doc, dict):
        raise AnnotationError("annotation must be a JSON object")
    rid = doc.get("id")
    if not isinstance(rid, str) or not rid:
        raise AnnotationError("annotation needs a non-empty string id")

    embedding = None
    if "embedding" in doc:
        embedding = _finite_array(doc["embedding"], "embedding")
        if embedding.size < 1:
            raise AnnotationError("embedding must not be empty")

    score = None
    if "aesthetic_score" in doc:
        raw = doc["aesthetic_score"]
        if isinstance(raw, bool) or not isinstance(raw, (int, float)) or not np.isfinite(raw):
            raise AnnotationError("aesthetic_score must be a finite number")
        score = float(raw)

    faces = None
    if "faces" in doc:
        if not isinstance(doc["faces"], list):
            raise AnnotationError("faces must be a list of boxes")
        parsed = []
        for i, box in enumerate(doc["faces"]):
            if not isinstance(box, dict):
                raise AnnotationError(f"faces[{i}] must be an object")
            try:
                parsed.append(FaceBox(*(_as_int(box[k], f"faces[{i}].{k}") for k in ("x", "y", "w", "h"))))
            except KeyError as missing:
                raise AnnotationError(f"faces[{i}] missing field {missing}") from None
            except ValueError as bad:
                raise AnnotationError(f"faces[{i}]: {bad}") from None
        faces = tuple(parsed)

    sh = None
    if "sh_coeffs" in doc:
        sh = _finite_array(doc["sh_coeffs"], "sh_coeffs")
        if sh.shape != (9,):
            raise AnnotationError("sh_coeffs must hold exactly 9 numbers")

    azimuth = None
    if "azimuth_intensity" in doc:
        azimuth = _finite_array(doc["azimuth_intensity"], "azimuth_intensity")
        if azimuth.shape != (36,):
            raise AnnotationError("azimuth_intensity must hold exactly 36 numbers")
        if np.any(azimuth < 0):
            raise AnnotationError("azimuth_intensity must be non-negative")

    lines = None
    if "semantic_lines" in doc:
        if not isinstance(doc["semantic_lines"], list):
            raise AnnotationError("semantic_lines must be a list of endpoint pairs")
        parsed_lines = []
        for i, pair in enumerate(doc["semantic_lines"]):
            parsed_lines.append(_parse_line(pair, f"semantic_lines[{i}]"))
        lines = tuple(parsed_lines)

    return AnnotationSidecar(rid, embedding, score, faces, sh, azimuth, lines)


def _parse_line(pair, what: str) -> LineSegment:
    if (not isinstance(pair, (list, tuple)) or len(pair) != 2
            or any(not isinstance(p, (list, tuple)) or len(p) != 2 for p in pair)):
        raise AnnotationError(f"{what} must be [[x,y],[x,y]]")
    (x0, y0), (x1, y1) = pair
    p0 = (_as_int(x0, f"{what}.x0"), _as_int(y0, f"{what}.y0"))
    p1 = (_as_int(x1, f"{what}.x1"), _as_int(y1, f"{what}.y1"))
    for x, y in (p0, p1):
        if not (0 <= x < CANONICAL_WIDTH and 0 <= y < CANONICAL_HEIGHT):
            raise AnnotationError(f"{what} endpoint ({x},{y}) outside the canonical frame")
    if p0 == p1:
        raise AnnotationError(f"{what} endpoints coincide")
    # Normalize to the border-to-border segment of the supporting line.
    return to_segment(segment_to_polar(LineSegment(p0, p1)))


def load_annotation(path: str) -> AnnotationSidecar:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise AnnotationError(f"cannot read annotation {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise AnnotationError(f"{path} is not valid JSON: {err}") from None
    return parse_annotation(doc)
