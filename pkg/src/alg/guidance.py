"""Guidance orchestration: profile images, compare against photography
templates (template mode) or retrieved guidance images (image mode), and
render deterministic natural-language advice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .annotations import AnnotationSidecar
from .composition_landscape import (
    LandscapeComposition,
    LineSegment,
    classify_landscape_composition,
    detect_edges,
    hough_lines,
    to_segment,
)
from .composition_portrait import (
    ANCHORS,
    PortraitComposition,
    classify_portrait_composition,
    face_center,
    move_instructions,
)
from .harmony import ColorfulnessReport, HarmonyFit, HarmonyScheme, best_palette, colorfulness
from .lighting_landscape import (
    OCTANT_CENTERS,
    AzimuthalDistribution,
    LandscapeLightReport,
    estimate_azimuthal_distribution,
    landscape_light_report,
)
from .lighting_portrait import (
    PortraitLightReport,
    classify_portrait_light,
    illumination_center,
    render_sh,
)
from .raster import RasterImage, hue_histogram, resize_canonical, rgb_to_hsv

MODE_LANDSCAPE = "landscape"
MODE_PORTRAIT = "portrait"

ATTRIBUTES = ("color", "lighting", "composition")

_SH_DIAG = 256.0 * float(np.sqrt(2.0))


class ModeMismatchError(Exception):
    """Input image mode and reference mode disagree."""


class MissingEmbeddingError(Exception):
    """Image mode needs an embedding the annotation does not carry."""


class ProfileMissError(Exception):
    """The selected guidance image has no entry in the profile sidecar."""


class UnknownTemplateError(Exception):
    """Template name resolves to no built-in or readable spec file."""


@dataclass(frozen=True)
class ColorProfile:
    report: ColorfulnessReport
    fit: HarmonyFit


@dataclass(frozen=True)
class AttributeProfile:
    mode: str
    color: ColorProfile | None
    lighting: LandscapeLightReport | PortraitLightReport | None
    composition: LandscapeComposition | PortraitComposition | None


@dataclass(frozen=True)
class TemplateSpec:
    name: str
    mode: str
    color_level: int
    lighting: str
    composition: str


@dataclass(frozen=True)
class AttributeAdvice:
    attribute: str
    verdict: str
    quantitative: object
    sentence: str


@dataclass(frozen=True)
class GuidanceReport:
    input_id: str
    reference_id: str
    mode: str
    advice: tuple[AttributeAdvice, ...]
    text: str


# === Template loading ===

_OCTANT_NAMES = tuple(OCTANT_CENTERS)
_LIGHT_TYPES = ("Rembrandt", "Butterfly", "Lower")
_LANDSCAPE_KINDS = ("Horizontal", "Thirds", "Diagonal", "Unclassified")
_PORTRAIT_ANCHORS = ("Center", "ThirdTL", "ThirdTR", "ThirdBL", "ThirdBR")


def load_template(name: str) -> TemplateSpec:
    """Resolve a built-in template name or a spec file path."""
    try:
        doc = config.load_template_json(name)
    except (OSError, ValueError) as err:
        raise UnknownTemplateError(f"cannot load template {name}: {err}") from None
    try:
        spec = TemplateSpec(
            str(doc["name"]), str(doc["mode"]), int(doc["color_level"]),
            str(doc["lighting"]), str(doc["composition"]))
    except (KeyError, TypeError, ValueError) as err:
        raise UnknownTemplateError(f"template {name} is malformed: {err}") from None

    if spec.mode not in (MODE_LANDSCAPE, MODE_PORTRAIT):
        raise UnknownTemplateError(f"template {name}: bad mode {spec.mode}")
    if not 1 <= spec.color_level <= 7:
        raise UnknownTemplateError(f"template {name}: color_level out of range")
    lighting_domain = _OCTANT_NAMES if spec.mode == MODE_LANDSCAPE else _LIGHT_TYPES
    comp_domain = _LANDSCAPE_KINDS if spec.mode == MODE_LANDSCAPE else _PORTRAIT_ANCHORS
    if spec.lighting not in lighting_domain:
        raise UnknownTemplateError(f"template {name}: bad lighting target {spec.lighting}")
    if spec.composition not in comp_domain:
        raise UnknownTemplateError(f"template {name}: bad composition target {spec.composition}")
    return spec


# === Profiling ===

def route_mode(annotation: AnnotationSidecar | None) -> str:
    """Portrait iff the annotation carries at least one face box."""
    if annotation is not None and annotation.faces:
        return MODE_PORTRAIT
    return MODE_LANDSCAPE


def profile_image(image: RasterImage | None, annotation: AnnotationSidecar | None,
                  mode: str | None = None,
                  tolerances: config.Tolerances | None = None) -> AttributeProfile:
    """Profile color, lighting and composition; attributes whose inputs are
    missing come back as None so comparison can report them unavailable.

    image may be None (annotation-only profiling at index-build time), which
    disables the color attribute and all pixel fallbacks.
    """
    tol = tolerances or config.load_tolerances()
    mode = mode or route_mode(annotation)
    if mode not in (MODE_LANDSCAPE, MODE_PORTRAIT):
        raise ValueError(f"unknown mode: {mode}")

    canonical = resize_canonical(image) if image is not None else None

    color = None
    if canonical is not None:
        hsv = rgb_to_hsv(canonical)
        color = ColorProfile(
            colorfulness(canonical),
            best_palette(hue_histogram(hsv, tol.s_min, tol.v_min)))

    if mode == MODE_LANDSCAPE:
        lighting = _landscape_lighting(canonical, annotation, tol)
        composition = _landscape_composition(canonical, annotation, tol)
    else:
        lighting = _portrait_lighting(annotation)
        composition = _portrait_composition(annotation)
    return AttributeProfile(mode, color, lighting, composition)


def _landscape_lighting(canonical, annotation, tol):
    if annotation is not None and annotation.azimuth_intensity is not None:
        dist = AzimuthalDistribution(annotation.azimuth_intensity)
    elif canonical is not None:
        dist = estimate_azimuthal_distribution(canonical, tol.fov_degrees)
    else:
        return None
    try:
        return landscape_light_report(dist)
    except ValueError:
        return None


def _landscape_composition(canonical, annotation, tol):
    if annotation is not None and annotation.semantic_lines is not None:
        segments = list(annotation.semantic_lines)
    elif canonical is not None:
        segments = []
        for line in hough_lines(detect_edges(canonical, tol.edge_threshold), tol.hough_k):
            try:
                segments.append(to_segment(line))
            except ValueError:
                continue
    else:
        return None
    if not segments:
        return None
    return classify_landscape_composition(segments)


def _portrait_lighting(annotation):
    if annotation is None or annotation.sh_coeffs is None:
        return None
    if not np.any(annotation.sh_coeffs):
        return None
    center = illumination_center(render_sh(annotation.sh_coeffs))
    return classify_portrait_light(center)


def _portrait_composition(annotation):
    if annotation is None or not annotation.faces:
        return None
    subject = max(annotation.faces, key=lambda box: box.area)
    return classify_portrait_composition(face_center(subject))


# === Comparison ===

def _wrap_angle(delta: float) -> float:
    return (delta + 180.0) % 360.0 - 180.0


def _level_amount(magnitude: int) -> str:
    return f"{magnitude} level" + ("" if magnitude == 1 else "s")


def compare_profiles(input_profile: AttributeProfile,
                     reference: AttributeProfile | TemplateSpec,
                     tolerances: config.Tolerances | None = None) -> list[AttributeAdvice]:
    """Exactly three advice records, in color, lighting, composition order.

    Categorical mismatch -> adopt; match -> adjust when the quantitative
    delta exceeds the attribute tolerance, keep otherwise; an attribute
    missing on either side -> none.
    """
    if input_profile.mode != reference.mode:
        raise ModeMismatchError(
            f"input is {input_profile.mode} but reference is {reference.mode}")
    tol = tolerances or config.load_tolerances()
    sentences = config.load_sentences()
    is_template = isinstance(reference, TemplateSpec)

    advice = [
        _compare_color(input_profile, reference, is_template, tol, sentences),
        _compare_lighting(input_profile, reference, is_template, tol, sentences),
        _compare_composition(input_profile, reference, is_template, tol, sentences),
    ]
    return advice


def _none_advice(attribute: str, sentences) -> AttributeAdvice:
    return AttributeAdvice(attribute, "none", None, sentences[f"{attribute}.none"])


def _compare_color(profile, reference, is_template, tol, sentences):
    if profile.color is None:
        return _none_advice("color", sentences)
    input_level = profile.color.report.level

    if is_template:
        ref_level = reference.color_level
        palettes_match = True          # templates do not constrain the palette
        ref_palette = None
    else:
        if reference.color is None:
            return _none_advice("color", sentences)
        ref_level = reference.color.report.level
        ref_palette = reference.color.fit.scheme.template_id
        palettes_match = ref_palette == profile.color.fit.scheme.template_id

    delta = ref_level - input_level
    if not palettes_match:
        sentence = sentences["color.adopt"].format(palette=ref_palette)
        return AttributeAdvice("color", "adopt", delta, sentence)
    if abs(delta) > tol.colorfulness_levels:
        direction = "vivid" if delta > 0 else "frosty"
        action = "raise" if delta > 0 else "lower"
        sentence = sentences["color.adjust"].format(
            direction=direction, action=action, amount=_level_amount(abs(delta)))
        return AttributeAdvice("color", "adjust", delta, sentence)
    return AttributeAdvice("color", "keep", delta, sentences["color.keep"])


def _compare_lighting(profile, reference, is_template, tol, sentences):
    if profile.lighting is None:
        return _none_advice("lighting", sentences)

    if profile.mode == MODE_LANDSCAPE:
        if is_template:
            ref_octant = reference.lighting
            delta = _wrap_angle(OCTANT_CENTERS[ref_octant] - profile.lighting.theta_max)
        else:
            if reference.lighting is None:
                return _none_advice("lighting", sentences)
            ref_octant = reference.lighting.octant
            delta = _wrap_angle(reference.lighting.theta_max - profile.lighting.theta_max)
        if ref_octant != profile.lighting.octant:
            sentence = sentences["lighting.adopt.landscape"].format(
                direction=sentences[f"octant.{ref_octant}"])
            return AttributeAdvice("lighting", "adopt", delta, sentence)
        if abs(delta) > tol.lighting_degrees:
            turn = "clockwise" if delta > 0 else "counter-clockwise"
            sentence = sentences["lighting.adjust.landscape"].format(
                amount=f"{abs(delta):g}", turn=turn)
            return AttributeAdvice("lighting", "adjust", delta, sentence)
        return AttributeAdvice("lighting", "keep", delta, sentences["lighting.keep"])

    # Portrait: categorical class is the canonical light type; the adjust
    # branch asks to strengthen the input's own match with the type.
    if is_template:
        ref_type = reference.lighting
    else:
        if reference.lighting is None:
            return _none_advice("lighting", sentences)
        ref_type = reference.lighting.light_type
    if ref_type != profile.lighting.light_type:
        sentence = sentences["lighting.adopt.portrait"].format(light_type=ref_type)
        return AttributeAdvice("lighting", "adopt", None, sentence)
    distance = (1.0 - profile.lighting.similarity) * _SH_DIAG
    if profile.lighting.similarity > tol.portrait_similarity:
        return AttributeAdvice("lighting", "keep", distance, sentences["lighting.keep"])
    sentence = sentences["lighting.adjust.portrait"].format(
        light_type=ref_type, description=sentences[f"light_desc.{ref_type}"])
    return AttributeAdvice("lighting", "adjust", distance, sentence)


def _compare_composition(profile, reference, is_template, tol, sentences):
    if profile.composition is None:
        return _none_advice("composition", sentences)

    if profile.mode == MODE_LANDSCAPE:
        if is_template:
            ref_kind = reference.composition
        else:
            if reference.composition is None:
                return _none_advice("composition", sentences)
            ref_kind = reference.composition.kind
        if ref_kind != profile.composition.kind:
            sentence = sentences["composition.adopt.landscape"].format(
                layout=sentences[f"layout.{ref_kind}"])
            return AttributeAdvice("composition", "adopt", None, sentence)
        tilt = profile.composition.tilt_delta
        shift = profile.composition.shift_delta
        delta = (tilt, shift)
        if abs(tilt) > tol.tilt_degrees or abs(shift) > tol.shift_pixels:
            parts = []
            if abs(tilt) > tol.tilt_degrees:
                turn = "clockwise" if tilt > 0 else "counter-clockwise"
                parts.append(f"rotate the camera {abs(tilt):.1f} degrees {turn}")
            if abs(shift) > tol.shift_pixels:
                direction = "down" if shift > 0 else "up"
                parts.append(f"move the line {abs(shift):g} px {direction}")
            sentence = sentences["composition.adjust.landscape"].format(
                instructions=" and ".join(parts))
            return AttributeAdvice("composition", "adjust", delta, sentence)
        return AttributeAdvice("composition", "keep", delta, sentences["composition.keep"])

    if is_template:
        ref_anchor = reference.composition
    else:
        if reference.composition is None:
            return _none_advice("composition", sentences)
        ref_anchor = reference.composition.anchor
    anchor_name = sentences[f"anchor.{ref_anchor}"]
    if ref_anchor != profile.composition.anchor:
        ax, ay = dict(ANCHORS)[ref_anchor]
        cx, cy = profile.composition.center
        offset = (ax - cx, ay - cy)
        sentence = sentences["composition.adopt.portrait"].format(
            instructions=move_instructions(offset), anchor=anchor_name)
        return AttributeAdvice("composition", "adopt", offset, sentence)
    offset = profile.composition.offset
    delta = offset
    if profile.composition.distance > tol.subject_offset_pixels:
        sentence = sentences["composition.adjust.portrait"].format(
            instructions=move_instructions(offset), anchor=anchor_name)
        return AttributeAdvice("composition", "adjust", delta, sentence)
    return AttributeAdvice("composition", "keep", delta, sentences["composition.keep"])


def render_text(advice: list[AttributeAdvice]) -> str:
    """Newline-joined sentences in the fixed attribute order."""
    return "\n".join(a.sentence for a in advice)


# === End-to-end modes ===

def alg_t(image: RasterImage, annotation: AnnotationSidecar | None,
          template: TemplateSpec, input_id: str,
          mode: str | None = None,
          tolerances: config.Tolerances | None = None) -> GuidanceReport:
    """Template mode: profile the input and compare it to a TemplateSpec."""
    routed = mode or route_mode(annotation)
    if routed != template.mode:
        raise ModeMismatchError(
            f"input routes to {routed} but template {template.name} is {template.mode}")
    profile = profile_image(image, annotation, routed, tolerances)
    advice = compare_profiles(profile, template, tolerances)
    return GuidanceReport(input_id, template.name, routed, tuple(advice), render_text(advice))


def alg_i(image: RasterImage, annotation: AnnotationSidecar | None, index,
          profiles: dict[str, AttributeProfile], k: int = 10,
          mode: str | None = None,
          tolerances: config.Tolerances | None = None) -> GuidanceReport:
    """Image mode: retrieve the guidance image, then compare profiles."""
    from .search_index import select_guidance
    from .search_index import top_k as search_top_k

    if annotation is None or annotation.embedding is None:
        raise MissingEmbeddingError("image mode needs an embedding in the annotation")
    results = search_top_k(index, annotation.embedding, k)
    ref_id = select_guidance(results)
    if ref_id not in profiles:
        raise ProfileMissError(f"no stored profile for guidance image {ref_id}")
    reference = profiles[ref_id]

    routed = mode or route_mode(annotation)
    profile = profile_image(image, annotation, routed, tolerances)
    advice = compare_profiles(profile, reference, tolerances)
    return GuidanceReport(annotation.id, ref_id, routed, tuple(advice), render_text(advice))


# === JSON serialization ===

def round9(x: float) -> float:
    """Floats are serialized at 9 significant digits everywhere."""
    return float(f"{float(x):.9g}")


def profile_to_json(profile: AttributeProfile, input_id: str) -> dict:
    doc: dict = {"id": input_id, "mode": profile.mode}

    if profile.color is None:
        doc["color"] = None
    else:
        rep, fit = profile.color.report, profile.color.fit
        doc["color"] = {
            "m_value": round9(rep.m_value),
            "level": rep.level,
            "level_name": rep.level_name,
            "palette": {
                "template": fit.scheme.template_id,
                "alpha": round9(fit.scheme.alpha),
                "energy": round9(fit.energy),
            },
        }

    light = profile.lighting
    if light is None:
        doc["lighting"] = None
    elif profile.mode == MODE_LANDSCAPE:
        doc["lighting"] = {
            "octant": light.octant,
            "theta_max": round9(light.theta_max),
            "delta": round9(light.delta),
        }
    else:
        doc["lighting"] = {
            "light_type": light.light_type,
            "center": [int(light.center[0]), int(light.center[1])],
            "similarity": round9(light.similarity),
        }

    comp = profile.composition
    if comp is None:
        doc["composition"] = None
    elif profile.mode == MODE_LANDSCAPE:
        doc["composition"] = {
            "kind": comp.kind,
            "primary_line": [list(comp.primary_line.p0), list(comp.primary_line.p1)],
            "tilt_delta": round9(comp.tilt_delta),
            "shift_delta": round9(comp.shift_delta),
        }
    else:
        doc["composition"] = {
            "anchor": comp.anchor,
            "center": [int(comp.center[0]), int(comp.center[1])],
            "distance": round9(comp.distance),
            "offset": [int(comp.offset[0]), int(comp.offset[1])],
        }
    return doc


def profile_from_json(doc: dict) -> AttributeProfile:
    """Rebuild a stored profile from the profiles sidecar."""
    mode = doc["mode"]

    color = None
    if doc.get("color") is not None:
        c = doc["color"]
        color = ColorProfile(
            ColorfulnessReport(float(c["m_value"]), int(c["level"]), str(c["level_name"])),
            HarmonyFit(
                HarmonyScheme(c["palette"]["template"], float(c["palette"]["alpha"])),
                float(c["palette"]["energy"])))

    lighting = None
    if doc.get("lighting") is not None:
        li = doc["lighting"]
        if mode == MODE_LANDSCAPE:
            lighting = LandscapeLightReport(li["octant"], float(li["theta_max"]), float(li["delta"]))
        else:
            lighting = PortraitLightReport(
                li["light_type"], (int(li["center"][0]), int(li["center"][1])),
                float(li["similarity"]))

    composition = None
    if doc.get("composition") is not None:
        co = doc["composition"]
        if mode == MODE_LANDSCAPE:
            p0, p1 = co["primary_line"]
            composition = LandscapeComposition(
                co["kind"], LineSegment((int(p0[0]), int(p0[1])), (int(p1[0]), int(p1[1]))),
                float(co["tilt_delta"]), float(co["shift_delta"]))
        else:
            composition = PortraitComposition(
                co["anchor"], (int(co["center"][0]), int(co["center"][1])),
                float(co["distance"]), (int(co["offset"][0]), int(co["offset"][1])))

    return AttributeProfile(mode, color, lighting, composition)


def _advice_delta_json(quantitative):
    if quantitative is None:
        return None
    if isinstance(quantitative, tuple):
        return [v if isinstance(v, int) else round9(v) for v in quantitative]
    if isinstance(quantitative, int):
        return quantitative
    return round9(quantitative)


def report_to_json(report: GuidanceReport) -> dict:
    return {
        "input_id": report.input_id,
        "reference_id": report.reference_id,
        "mode": report.mode,
        "advice": [
            {
                "attribute": a.attribute,
                "verdict": a.verdict,
                "delta": _advice_delta_json(a.quantitative),
                "sentence": a.sentence,
            }
            for a in report.advice
        ],
        "text": report.text,
    }
