"""Portrait composition: subject placement against the rule-of-thirds power
points and the frame center, with move-subject advice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .raster import CANONICAL_HEIGHT, CANONICAL_WIDTH

# Anchor order doubles as the tie-break priority.
ANCHORS = (
    ("Center", (320, 213)),
    ("ThirdTL", (213, 142)),
    ("ThirdTR", (426, 142)),
    ("ThirdBL", (213, 284)),
    ("ThirdBR", (426, 284)),
)


@dataclass(frozen=True)
class FaceBox:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError("face box needs positive width and height")
        if self.x < 0 or self.y < 0 or self.x + self.w > CANONICAL_WIDTH or self.y + self.h > CANONICAL_HEIGHT:
            raise ValueError("face box must lie within the canonical frame")

    @property
    def area(self) -> int:
        return self.w * self.h


@dataclass(frozen=True)
class PortraitComposition:
    anchor: str
    center: tuple[int, int]
    distance: float
    offset: tuple[int, int]


@dataclass(frozen=True)
class PortraitCompositionAdvice:
    well_placed: bool
    sentence: str


def face_center(box: FaceBox) -> tuple[int, int]:
    """Box center, halves rounded up (floor(v + 0.5))."""
    cx = int(np.floor(box.x + box.w / 2.0 + 0.5))
    cy = int(np.floor(box.y + box.h / 2.0 + 0.5))
    return cx, cy


def classify_portrait_composition(center: tuple[int, int]) -> PortraitComposition:
    """Nearest anchor by Euclidean distance; ties follow the anchor order."""
    cx, cy = center
    best = None
    best_dist = np.inf
    for name, (ax, ay) in ANCHORS:
        dist = float(np.hypot(ax - cx, ay - cy))
        if dist < best_dist:
            best, best_dist = (name, (ax, ay)), dist
    name, (ax, ay) = best
    return PortraitComposition(name, (int(cx), int(cy)), best_dist, (ax - cx, ay - cy))


def move_instructions(offset: tuple[int, int]) -> str:
    """Human phrasing of a move vector, with frame-fraction percentages.

    Positive dx means the target sits to the right of the subject.
    """
    dx, dy = offset
    parts = []
    if dx != 0:
        word = "right" if dx > 0 else "left"
        parts.append(f"{word} by {abs(dx)} px ({100.0 * abs(dx) / CANONICAL_WIDTH:.1f}% of frame width)")
    if dy != 0:
        word = "down" if dy > 0 else "up"
        parts.append(f"{word} by {abs(dy)} px ({100.0 * abs(dy) / CANONICAL_HEIGHT:.1f}% of frame height)")
    return " and ".join(parts)


def portrait_composition_advice(comp: PortraitComposition, threshold: float = 32.0) -> PortraitCompositionAdvice:
    """Well placed when the anchor distance is within the threshold,
    otherwise a move instruction toward the anchor."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    sentences = config.load_sentences()
    anchor_name = sentences[f"anchor.{comp.anchor}"]
    if comp.distance <= threshold:
        return PortraitCompositionAdvice(True, sentences["portrait_comp.well_placed"].format(anchor=anchor_name))
    text = sentences["portrait_comp.move"].format(
        instructions=move_instructions(comp.offset), anchor=anchor_name)
    return PortraitCompositionAdvice(False, text)
