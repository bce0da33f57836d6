"""Hue-wheel palette fitting, binary sector labeling, hue fine-tuning,
and the 7-level colorfulness scale with vivid/frosty advice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from . import config
from .raster import HUE_BINS, HueHistogram, RasterImage

# Chromatic templates in tie-break order; N (achromatic, no sectors) is
# excluded from fitting because it has no energy definition.
TEMPLATE_ORDER = ("i", "V", "L", "I", "T", "Y", "X")

_BIN_HUES = np.arange(HUE_BINS, dtype=np.float64)

# The min-cut solver quantizes edge capacities to int32, so each instance is
# scaled to spend the full range on its own largest cost term.
_CAP_LIMIT = (1 << 31) - 1


@dataclass(frozen=True)
class PaletteTemplate:
    """A harmonic type: up to two hue sectors given as (offset, width)."""

    id: str
    sectors: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.sectors) > 2:
            raise ValueError("templates have at most two sectors")
        for _, width in self.sectors:
            if not 0.0 < width <= 360.0:
                raise ValueError("sector widths must lie in (0, 360]")

    def centers(self, alpha: float) -> np.ndarray:
        return np.array([(alpha + off) % 360.0 for off, _ in self.sectors])

    def widths(self) -> np.ndarray:
        return np.array([w for _, w in self.sectors])


@dataclass(frozen=True)
class HarmonyScheme:
    template_id: str
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 360.0:
            raise ValueError("alpha must lie in [0, 360)")


@dataclass(frozen=True)
class HarmonyFit:
    scheme: HarmonyScheme
    energy: float


@dataclass(frozen=True)
class SectorLabeling:
    """Per-pixel sector assignment (0 or 1) and the labeling energy."""

    labels: np.ndarray
    energy: float


@dataclass(frozen=True)
class ColorfulnessReport:
    m_value: float
    level: int
    level_name: str


@dataclass(frozen=True)
class ColorAdvice:
    direction: str
    magnitude: int


def get_templates(name: str = "palettes.cfg") -> dict[str, PaletteTemplate]:
    """All configured templates keyed by id, including the empty N."""
    return {
        tid: PaletteTemplate(tid, sectors)
        for tid, sectors in config.load_palettes(name).items()
    }


def get_template(tid: str) -> PaletteTemplate:
    templates = get_templates()
    if tid not in templates:
        raise KeyError(f"unknown palette template: {tid}")
    return templates[tid]


def arc_distance(h1, h2):
    """Shortest angular distance on the hue wheel, in [0, 180]."""
    d = np.abs(np.asarray(h1, dtype=np.float64) - np.asarray(h2, dtype=np.float64)) % 360.0
    return np.minimum(d, 360.0 - d)


def sector_distances(hues: np.ndarray, template: PaletteTemplate, alpha: float) -> np.ndarray:
    """Distance from each hue to the nearest rotated sector (0 inside)."""
    if not template.sectors:
        raise ValueError(f"template {template.id} has no sectors")
    dists = np.full(np.shape(hues), np.inf)
    for offset, width in template.sectors:
        center = (alpha + offset) % 360.0
        d = np.maximum(arc_distance(hues, center) - width / 2.0, 0.0)
        dists = np.minimum(dists, d)
    return dists


def harmony_energy(hist: HueHistogram, template: PaletteTemplate, alpha: float) -> float:
    """Saturation-weighted distance of all hue mass to the rotated sectors."""
    return float(sector_distances(_BIN_HUES, template, alpha) @ hist.bins)


def _energies_at(hist: HueHistogram, template: PaletteTemplate, alphas: np.ndarray) -> np.ndarray:
    """harmony_energy for many alphas at once: (n_alphas,) result."""
    dists = np.full((len(alphas), HUE_BINS), np.inf)
    for offset, width in template.sectors:
        centers = (alphas[:, None] + offset) % 360.0
        d = np.maximum(arc_distance(_BIN_HUES[None, :], centers) - width / 2.0, 0.0)
        np.minimum(dists, d, out=dists)
    return dists @ hist.bins


def best_angle(hist: HueHistogram, template: PaletteTemplate) -> tuple[float, float]:
    """Minimize harmony_energy over alpha: 1 degree scan, then 0.1 degree
    refinement around the winner plus every cell that could still beat it.
    Ties go to the smallest alpha."""
    if not template.sectors:
        raise ValueError(f"template {template.id} has no sectors")

    coarse = np.arange(360, dtype=np.float64)
    energies = _energies_at(hist, template, coarse)
    g = int(np.argmin(energies))        # first minimum = smallest alpha

    # Energy is piecewise linear in alpha with kinks on the 0.1 degree grid
    # (all sector half-widths are multiples of 0.1), so scanning tenths around
    # the winning degree is exact within that cell.
    tenths = (np.arange(10 * g - 10, 10 * g + 11) % 3600)
    fine_energies = _energies_at(hist, template, tenths / 10.0)
    window_best = float(fine_energies.min())

    # The slope of the energy in alpha is bounded by the histogram mass, so a
    # 1 degree cell cannot dip below the average of its endpoints minus half
    # the mass. Sweep the tenths of every cell that could still win; the
    # result then equals a full 0.1 degree scan for any histogram.
    bounds = (energies + np.roll(energies, -1)) / 2.0 - hist.total_mass / 2.0
    cells = np.nonzero(bounds <= window_best)[0]
    candidates = np.unique(np.concatenate(
        [tenths, (cells[:, None] * 10 + np.arange(10)[None, :]).ravel()]))
    cand_energies = _energies_at(hist, template, candidates / 10.0)
    j = int(np.argmin(cand_energies))   # ascending alphas, first minimum
    return float(candidates[j]) / 10.0, float(cand_energies[j])


def best_palette(hist: HueHistogram) -> HarmonyFit:
    """Best (template, alpha) over the seven chromatic templates."""
    templates = get_templates()
    best: HarmonyFit | None = None
    for tid in TEMPLATE_ORDER:
        alpha, energy = best_angle(hist, templates[tid])
        if best is None or energy < best.energy:
            best = HarmonyFit(HarmonyScheme(tid, alpha), energy)
    assert best is not None
    return best


# === Binary sector labeling ===

def _labeling_energy(costs: np.ndarray, labels: np.ndarray, lam: float) -> float:
    """E = sum of chosen data costs + lam * count of unequal 4-neighbors."""
    h, w = labels.shape
    data = float(np.where(labels == 0, costs[0], costs[1]).sum())
    cuts = int((labels[:, 1:] != labels[:, :-1]).sum()) if w > 1 else 0
    cuts += int((labels[1:, :] != labels[:-1, :]).sum()) if h > 1 else 0
    return data + lam * cuts


def label_sectors(hsv: np.ndarray, scheme: HarmonyScheme, lam: float = 0.5) -> SectorLabeling:
    """Assign each pixel to one of the scheme's sectors by exact min-cut.

    Energy: sum_p s_p * d(h_p, sector_{l(p)}) + lam * [4-neighbor disagreements].
    Solved as an s-t max-flow on integer capacities (costs scaled by 2^30).
    """
    template = get_template(scheme.template_id)
    if not template.sectors:
        raise ValueError(f"template {template.id} has no sectors to label")

    h_grid = hsv[..., 0]
    s_grid = hsv[..., 1]
    rows, cols = h_grid.shape

    per_sector = np.stack([
        s_grid * np.maximum(arc_distance(h_grid, (scheme.alpha + off) % 360.0) - w / 2.0, 0.0)
        for off, w in template.sectors
    ])
    if len(template.sectors) == 1:
        labels = np.zeros((rows, cols), dtype=np.int64)
        return SectorLabeling(labels, float(per_sector[0].sum()))

    c0, c1 = per_sector[0], per_sector[1]
    if lam <= 0.0:
        labels = (c1 < c0).astype(np.int64)
        return SectorLabeling(labels, _labeling_energy(per_sector, labels, lam))

    n = rows * cols
    source, sink = n, n + 1
    pix = np.arange(n).reshape(rows, cols)

    # scipy's maximum_flow stores capacities as int32, so pick the finest
    # fixed-point scale that keeps the largest cost inside that range.
    top = max(float(per_sector.max()), lam)
    scale = _CAP_LIMIT / top if top > 0.0 else 1.0

    # Terminal links: paying cap(source->p) = cost of label 1 when p stays on
    # the sink side, and cap(p->sink) = cost of label 0 on the source side.
    cap1 = np.rint(c1.ravel() * scale).astype(np.int64)
    cap0 = np.rint(c0.ravel() * scale).astype(np.int64)
    lam_cap = np.int64(np.rint(lam * scale))

    right = np.stack([pix[:, :-1].ravel(), pix[:, 1:].ravel()]) if cols > 1 else np.empty((2, 0), int)
    down = np.stack([pix[:-1, :].ravel(), pix[1:, :].ravel()]) if rows > 1 else np.empty((2, 0), int)
    nbr_a = np.concatenate([right[0], down[0]])
    nbr_b = np.concatenate([right[1], down[1]])

    src = np.concatenate([np.full(n, source), np.arange(n), nbr_a, nbr_b])
    dst = np.concatenate([np.arange(n), np.full(n, sink), nbr_b, nbr_a])
    cap = np.concatenate([cap1, cap0, np.full(nbr_a.size * 2, lam_cap, dtype=np.int64)])

    graph = csr_matrix((cap.astype(np.int32), (src, dst)), shape=(n + 2, n + 2))
    result = maximum_flow(graph, source, sink)

    # Min-cut partition: nodes reachable from the source in the residual graph
    # take label 0.  Reverse residuals on paired neighbor edges can hit twice
    # the cap limit, so widen before subtracting.
    residual = graph.astype(np.int64) - result.flow.astype(np.int64)
    residual.eliminate_zeros()
    reachable = _bfs_from(residual, source, n + 2)
    labels = np.where(reachable[:n], 0, 1).astype(np.int64).reshape(rows, cols)
    return SectorLabeling(labels, _labeling_energy(per_sector, labels, lam))


def _bfs_from(residual: csr_matrix, start: int, size: int) -> np.ndarray:
    seen = np.zeros(size, dtype=bool)
    seen[start] = True
    frontier = [start]
    indptr, indices, data = residual.indptr, residual.indices, residual.data
    while frontier:
        nxt = []
        for u in frontier:
            for k in range(indptr[u], indptr[u + 1]):
                if data[k] > 0 and not seen[indices[k]]:
                    seen[indices[k]] = True
                    nxt.append(int(indices[k]))
        frontier = nxt
    return seen


def harmonize(hsv: np.ndarray, scheme: HarmonyScheme, labeling: SectorLabeling) -> np.ndarray:
    """Compress each hue into its assigned sector: H' = C + (w/2)tanh(2d/w)."""
    template = get_template(scheme.template_id)
    if not template.sectors:
        raise ValueError(f"template {template.id} has no sectors")
    if labeling.labels.shape != hsv.shape[:2]:
        raise ValueError("labeling does not cover the image")

    centers = template.centers(scheme.alpha)[labeling.labels]
    widths = template.widths()[labeling.labels]
    delta = (hsv[..., 0] - centers + 180.0) % 360.0 - 180.0
    new_h = (centers + (widths / 2.0) * np.tanh(2.0 * delta / widths)) % 360.0
    out = hsv.copy()
    out[..., 0] = new_h
    return out


# === Colorfulness ===

def colorfulness(image: RasterImage) -> ColorfulnessReport:
    """Opponent-channel colorfulness M = sigma + 0.3 mu, leveled 1-7."""
    px = image.pixels.astype(np.float64)
    rg = px[..., 0] - px[..., 1]
    yb = (px[..., 0] + px[..., 1]) / 2.0 - px[..., 2]
    sigma = np.sqrt(rg.var() + yb.var())
    mu = np.sqrt(rg.mean() ** 2 + yb.mean() ** 2)
    m_value = float(sigma + 0.3 * mu)

    thresholds, names = config.load_colorfulness()
    level = len(thresholds) + 1
    for i, bound in enumerate(thresholds):
        if m_value < bound:
            level = i + 1
            break
    return ColorfulnessReport(m_value, level, names[level - 1])


def color_advice(input_report: ColorfulnessReport, reference: ColorfulnessReport) -> ColorAdvice:
    """Vivid/frosty direction from the level difference."""
    diff = reference.level - input_report.level
    if diff > 0:
        return ColorAdvice("more vivid", diff)
    if diff < 0:
        return ColorAdvice("more frosty", -diff)
    return ColorAdvice("keep", 0)
