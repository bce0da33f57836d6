"""Landscape composition: Sobel edges, classical Hough voting, clipping to
border segments and classification into horizontal/thirds/diagonal."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import CANONICAL_HEIGHT, CANONICAL_WIDTH, RasterImage, luminance

# Rho accumulator: 1-pixel bins shifted by the canvas diagonal.
_RHO_OFFSET = int(np.ceil(np.hypot(CANONICAL_WIDTH - 1, CANONICAL_HEIGHT - 1)))
_RHO_BINS = 2 * _RHO_OFFSET + 1
_THETA_BINS = 180

# Thirds anchors: floor(426/3) and floor(2*426/3).
THIRDS_Y = (CANONICAL_HEIGHT // 3, 2 * CANONICAL_HEIGHT // 3)

HORIZONTAL_BAND = 5.0
DIAGONAL_BAND = (20.0, 70.0)
THIRDS_TOLERANCE = 15.0


@dataclass(frozen=True)
class PolarLine:
    """x cos(theta) + y sin(theta) = rho, theta in [0, 180) degrees."""

    rho: float
    theta_line: float
    votes: int


@dataclass(frozen=True)
class LineSegment:
    """Border-to-border segment; origin at the upper-left corner, y down."""

    p0: tuple[int, int]
    p1: tuple[int, int]


@dataclass(frozen=True)
class LandscapeComposition:
    kind: str
    primary_line: LineSegment
    tilt_delta: float
    shift_delta: float


def detect_edges(image: RasterImage, threshold: float = 0.25) -> np.ndarray:
    """Thresholded, max-normalized Sobel gradient magnitude on luminance."""
    if not image.is_canonical:
        raise ValueError("edge detection runs on the canonical frame only")
    lum = luminance(image)
    gx = ndimage.sobel(lum, axis=1)
    gy = ndimage.sobel(lum, axis=0)
    mag = np.hypot(gx, gy)
    peak = mag.max()
    if peak > 0:
        mag = mag / peak
    return mag >= threshold


def hough_lines(edges: np.ndarray, k: int = 2) -> list[PolarLine]:
    """Top-k Hough peaks with 1-degree x 1-pixel bins and greedy
    non-maximum suppression over a +-2 degree, +-5 pixel window."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if edges.shape != (CANONICAL_HEIGHT, CANONICAL_WIDTH):
        raise ValueError("edge map must be canonical size")

    ys, xs = np.nonzero(edges)
    acc = np.zeros((_THETA_BINS, _RHO_BINS), dtype=np.int64)
    if xs.size:
        thetas = np.deg2rad(np.arange(_THETA_BINS))
        for t, theta in enumerate(thetas):
            rho_idx = np.rint(xs * np.cos(theta) + ys * np.sin(theta)).astype(int) + _RHO_OFFSET
            acc[t] = np.bincount(rho_idx, minlength=_RHO_BINS)

    lines: list[PolarLine] = []
    for _ in range(k):
        flat = int(np.argmax(acc))
        votes = int(acc.flat[flat])
        if votes <= 0:
            break
        t, r = divmod(flat, _RHO_BINS)
        lines.append(PolarLine(float(r - _RHO_OFFSET), float(t), votes))
        # Suppress the window around the peak, wrapping theta with a rho flip.
        for dt in range(-2, 3):
            tt = t + dt
            rr = r
            if tt < 0:
                tt += _THETA_BINS
                rr = 2 * _RHO_OFFSET - r
            elif tt >= _THETA_BINS:
                tt -= _THETA_BINS
                rr = 2 * _RHO_OFFSET - r
            acc[tt, max(0, rr - 5): rr + 6] = 0
    return lines


def to_segment(line: PolarLine) -> LineSegment:
    """Clip the infinite line to the canvas border rectangle."""
    theta = np.deg2rad(line.theta_line)
    ct, st = np.cos(theta), np.sin(theta)
    xmax, ymax = CANONICAL_WIDTH - 1, CANONICAL_HEIGHT - 1
    eps = 1e-9

    candidates = []
    if abs(st) > eps:
        for x in (0.0, float(xmax)):
            y = (line.rho - x * ct) / st
            if -eps <= y <= ymax + eps:
                candidates.append((x, min(max(y, 0.0), float(ymax))))
    if abs(ct) > eps:
        for y in (0.0, float(ymax)):
            x = (line.rho - y * st) / ct
            if -eps <= x <= xmax + eps:
                candidates.append((min(max(x, 0.0), float(xmax)), y))

    points = sorted({(int(np.floor(x + 0.5)), int(np.floor(y + 0.5))) for x, y in candidates})
    if len(points) < 2:
        raise ValueError("line does not cross the canvas")
    return LineSegment(points[0], points[-1])


def segment_to_polar(segment: LineSegment, votes: int = 1) -> PolarLine:
    """Exact polar form of a segment's supporting line."""
    (x0, y0), (x1, y1) = segment.p0, segment.p1
    nx, ny = float(y0 - y1), float(x1 - x0)
    if nx == 0.0 and ny == 0.0:
        raise ValueError("segment endpoints coincide")
    if ny < 0.0 or (ny == 0.0 and nx < 0.0):
        nx, ny = -nx, -ny
    theta = float(np.arctan2(ny, nx))
    rho = x0 * np.cos(theta) + y0 * np.sin(theta)
    return PolarLine(float(rho), float(np.degrees(theta)), votes)


def classify_landscape_composition(segments: list[LineSegment]) -> LandscapeComposition:
    """Classify the primary (first) line and derive tilt/shift deltas.

    Sign convention: positive shift_delta moves the line down in frame,
    positive tilt_delta rotates the camera clockwise.
    """
    if not segments:
        raise ValueError("no segments to classify")
    primary = segments[0]
    (x0, y0), (x1, y1) = sorted([primary.p0, primary.p1])
    psi = float(np.degrees(np.arctan2(y1 - y0, x1 - x0)))
    phi = abs(psi)

    if phi <= HORIZONTAL_BAND:
        mean_y = (y0 + y1) / 2.0
        anchor = min(THIRDS_Y, key=lambda a: abs(a - mean_y))
        shift = float(anchor - mean_y)
        kind = "Thirds" if abs(shift) <= THIRDS_TOLERANCE else "Horizontal"
        return LandscapeComposition(kind, primary, -psi, shift)
    if DIAGONAL_BAND[0] <= phi <= DIAGONAL_BAND[1]:
        return LandscapeComposition("Diagonal", primary, 45.0 - phi, 0.0)
    return LandscapeComposition("Unclassified", primary, 0.0, 0.0)
