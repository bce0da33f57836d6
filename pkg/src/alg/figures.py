"""Report figures: hue wheel with fitted sectors, lighting maps and a
composition overlay, rendered headlessly to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .composition_portrait import ANCHORS
from .harmony import HarmonyFit, get_template
from .lighting_landscape import AzimuthalDistribution, BIN_WIDTH
from .lighting_portrait import IlluminationMap
from .raster import HUE_BINS, HueHistogram, RasterImage
from .composition_landscape import THIRDS_Y, LandscapeComposition


def save_color_figure(hist: HueHistogram, fit: HarmonyFit, path: str) -> None:
    """Polar hue histogram with the fitted palette sectors shaded."""
    fig = plt.figure(figsize=(5, 5))
    ax = fig.add_subplot(projection="polar")
    ax.set_theta_zero_location("E")
    ax.set_theta_direction(1)

    angles = np.deg2rad(np.arange(HUE_BINS) + 0.5)
    peak = hist.bins.max() if hist.bins.max() > 0 else 1.0
    ax.bar(angles, hist.bins / peak, width=np.deg2rad(1.0),
           color=plt.cm.hsv(np.arange(HUE_BINS) / HUE_BINS), linewidth=0)

    template = get_template(fit.scheme.template_id)
    for offset, width in template.sectors:
        center = (fit.scheme.alpha + offset) % 360.0
        span = np.deg2rad(np.linspace(center - width / 2.0, center + width / 2.0, 64))
        ax.fill_between(span, 0, 1.05, color="gray", alpha=0.25, linewidth=0)
    ax.set_yticklabels([])
    ax.set_title(f"palette {fit.scheme.template_id} at {fit.scheme.alpha:.1f} deg")
    fig.savefig(path, dpi=100)
    plt.close(fig)


def save_azimuth_figure(dist: AzimuthalDistribution, theta_max: float, path: str) -> None:
    """Polar ring of the 36 azimuth bins with the peak marked."""
    fig = plt.figure(figsize=(5, 5))
    ax = fig.add_subplot(projection="polar")
    ax.set_theta_zero_location("S")   # 0 deg = front light, behind the camera
    ax.set_theta_direction(-1)        # clockwise

    angles = np.deg2rad(np.arange(36) * BIN_WIDTH + BIN_WIDTH / 2.0)
    peak = dist.bins.max() if dist.bins.max() > 0 else 1.0
    ax.bar(angles, dist.bins / peak, width=np.deg2rad(BIN_WIDTH), color="goldenrod",
           edgecolor="white", linewidth=0.5)
    ax.plot([np.deg2rad(theta_max)] * 2, [0, 1.05], color="crimson", linewidth=2)
    ax.set_yticklabels([])
    ax.set_title("azimuthal light intensity")
    fig.savefig(path, dpi=100)
    plt.close(fig)


def save_sh_figure(ill: IlluminationMap, center: tuple[int, int], path: str) -> None:
    """Rendered SH illumination with the detected center marked."""
    fig, ax = plt.subplots(figsize=(5, 5))
    shown = np.where(ill.mask, ill.values, np.nan)
    im = ax.imshow(shown, cmap="magma")
    ax.plot(center[1], center[0], "c+", markersize=14, markeredgewidth=2)
    fig.colorbar(im, ax=ax, shrink=0.8)
    ax.set_title("illumination map")
    fig.savefig(path, dpi=100)
    plt.close(fig)


def save_composition_figure(canonical: RasterImage, composition, path: str) -> None:
    """Canonical frame with thirds grid and the detected structure."""
    fig, ax = plt.subplots(figsize=(6.4, 4.26))
    ax.imshow(canonical.pixels)
    for y in THIRDS_Y:
        ax.axhline(y, color="white", linewidth=0.8, alpha=0.6, linestyle="--")
    ax.axvline(213, color="white", linewidth=0.8, alpha=0.6, linestyle="--")
    ax.axvline(426, color="white", linewidth=0.8, alpha=0.6, linestyle="--")

    if isinstance(composition, LandscapeComposition):
        (x0, y0), (x1, y1) = composition.primary_line.p0, composition.primary_line.p1
        ax.plot([x0, x1], [y0, y1], color="crimson", linewidth=2)
        ax.set_title(f"{composition.kind}: tilt {composition.tilt_delta:+.1f} deg, "
                     f"shift {composition.shift_delta:+g} px")
    else:
        for name, (ax_, ay_) in ANCHORS:
            ax.plot(ax_, ay_, "wo", markersize=4)
        cx, cy = composition.center
        ax.plot(cx, cy, "c+", markersize=14, markeredgewidth=2)
        ax.set_title(f"subject near {composition.anchor}, {composition.distance:.0f} px off")
    ax.set_xlim(0, 639)
    ax.set_ylim(425, 0)
    fig.savefig(path, dpi=100)
    plt.close(fig)
