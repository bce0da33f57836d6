"""Eight-octant landscape lighting from an azimuthal intensity distribution.

Azimuth convention: 0 degrees is light from directly behind the camera
(front light on the subject), increasing clockwise seen from above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import CANONICAL_HEIGHT, CANONICAL_WIDTH, RasterImage, luminance, resize_canonical

AZIMUTH_BINS = 36
BIN_WIDTH = 360.0 / AZIMUTH_BINS

OCTANTS = ("Front", "RightFront", "Right", "RightBack", "Back", "LeftBack", "Left", "LeftFront")
OCTANT_CENTERS = {name: 45.0 * i for i, name in enumerate(OCTANTS)}


@dataclass(frozen=True)
class AzimuthalDistribution:
    """36 bins of 10 degrees; bin k covers [10k, 10(k+1))."""

    bins: np.ndarray

    def __post_init__(self):
        if self.bins.shape != (AZIMUTH_BINS,):
            raise ValueError(f"azimuthal distribution needs {AZIMUTH_BINS} bins")
        if np.any(self.bins < 0) or not np.all(np.isfinite(self.bins)):
            raise ValueError("bin intensities must be finite and non-negative")


@dataclass(frozen=True)
class LandscapeLightReport:
    octant: str
    theta_max: float
    delta: float


def octant_of(theta: float) -> str:
    """Octant whose 45-degree center is nearest; exact boundaries
    (22.5 + 45k) resolve counterclockwise, to the lower-center octant."""
    if not 0.0 <= theta < 360.0:
        raise ValueError("theta must lie in [0, 360)")
    shifted = (theta + 22.5) % 360.0
    idx = (int(np.ceil(shifted / 45.0)) - 1) % 8
    return OCTANTS[idx]


def peak_azimuth(dist: AzimuthalDistribution) -> float:
    """Center angle of the strongest bin; ties go to the lowest index."""
    if not np.any(dist.bins > 0):
        raise ValueError("azimuthal distribution is all zero")
    k = int(np.argmax(dist.bins))
    return BIN_WIDTH * k + BIN_WIDTH / 2.0


def landscape_light_report(dist: AzimuthalDistribution) -> LandscapeLightReport:
    """Octant of the peak plus the signed offset from the octant center."""
    theta = peak_azimuth(dist)
    octant = octant_of(theta)
    delta = (theta - OCTANT_CENTERS[octant] + 180.0) % 360.0 - 180.0
    return LandscapeLightReport(octant, theta, delta)


def estimate_azimuthal_distribution(image: RasterImage, fov: float = 90.0) -> AzimuthalDistribution:
    """Back-hemisphere fallback estimator from sky brightness.

    Mean luminance per column over the top third of the canonical frame;
    column c maps to azimuth 180 + (c/639 - 0.5) * fov, i.e. visible bright
    sky implies light from the back hemisphere. Frontal octants are only
    reachable through ingested distributions.
    """
    if not 10.0 < fov < 180.0:
        raise ValueError("fov must lie in (10, 180)")
    canonical = resize_canonical(image)
    top = luminance(canonical)[: CANONICAL_HEIGHT // 3, :]
    column_mean = top.mean(axis=0)

    azimuths = 180.0 + (np.arange(CANONICAL_WIDTH) / (CANONICAL_WIDTH - 1) - 0.5) * fov
    idx = np.floor(azimuths / BIN_WIDTH).astype(int) % AZIMUTH_BINS
    bins = np.bincount(idx, weights=column_mean, minlength=AZIMUTH_BINS)
    return AzimuthalDistribution(bins)
