"""Command-line surface: analyze, guide-template, guide-image, index-build.

Exit codes: 0 success; 2 unreadable input image/index; 3 invalid annotation;
4 unknown template; 5 mode mismatch; 6 index-build record validation failure;
7 missing embedding; 8 profile sidecar miss.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import config, guidance
from .annotations import AnnotationError, AnnotationSidecar, load_annotation
from .lighting_landscape import AzimuthalDistribution, estimate_azimuthal_distribution
from .lighting_portrait import illumination_center, render_sh
from .raster import RasterImage, hue_histogram, resize_canonical, rgb_to_hsv
from .search_index import EmbeddingRecord, build_index, load_index, save_index

EXIT_UNREADABLE = 2
EXIT_BAD_ANNOTATION = 3
EXIT_UNKNOWN_TEMPLATE = 4
EXIT_MODE_MISMATCH = 5
EXIT_BAD_RECORD = 6
EXIT_NO_EMBEDDING = 7
EXIT_PROFILE_MISS = 8

IMAGE_EXTENSIONS = (".png", ".bmp", ".jpg", ".jpeg")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def load_image(path: str) -> RasterImage:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as img:
            return RasterImage(np.asarray(img.convert("RGB"), dtype=np.uint8))
    except (OSError, UnidentifiedImageError, ValueError) as err:
        raise IOError(f"cannot read image {path}: {err}") from None


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


# === Report directory ===

def write_report_dir(directory: str, report: guidance.GuidanceReport,
                     profile: guidance.AttributeProfile, canonical: RasterImage,
                     annotation: AnnotationSidecar | None, tol: config.Tolerances) -> None:
    """Write report.json/report.txt/advice.csv plus one figure per
    available attribute."""
    from . import figures

    os.makedirs(directory, exist_ok=True)
    doc = guidance.report_to_json(report)
    with open(os.path.join(directory, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(_dump_json(doc) + "\n")
    with open(os.path.join(directory, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(report.text + "\n")
    with open(os.path.join(directory, "advice.csv"), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["attribute", "verdict", "delta", "sentence"])
        for entry in doc["advice"]:
            writer.writerow([entry["attribute"], entry["verdict"],
                             json.dumps(entry["delta"]), entry["sentence"]])

    if profile.color is not None:
        hist = hue_histogram(rgb_to_hsv(canonical), tol.s_min, tol.v_min)
        figures.save_color_figure(hist, profile.color.fit,
                                  os.path.join(directory, "color.png"))
    if profile.lighting is not None:
        if profile.mode == guidance.MODE_LANDSCAPE:
            if annotation is not None and annotation.azimuth_intensity is not None:
                dist = AzimuthalDistribution(annotation.azimuth_intensity)
            else:
                dist = estimate_azimuthal_distribution(canonical, tol.fov_degrees)
            figures.save_azimuth_figure(dist, profile.lighting.theta_max,
                                        os.path.join(directory, "lighting.png"))
        else:
            ill = render_sh(annotation.sh_coeffs)
            figures.save_sh_figure(ill, illumination_center(ill),
                                   os.path.join(directory, "lighting.png"))
    if profile.composition is not None:
        figures.save_composition_figure(canonical, profile.composition,
                                        os.path.join(directory, "composition.png"))


# === Commands ===

def cmd_analyze(args) -> int:
    try:
        image = load_image(args.image)
    except IOError as err:
        return _fail(EXIT_UNREADABLE, str(err))
    try:
        annotation = load_annotation(args.annotation) if args.annotation else None
    except AnnotationError as err:
        return _fail(EXIT_BAD_ANNOTATION, str(err))

    tol = config.load_tolerances()
    profile = guidance.profile_image(image, annotation, args.mode, tol)
    input_id = annotation.id if annotation else os.path.splitext(os.path.basename(args.image))[0]
    print(_dump_json(guidance.profile_to_json(profile, input_id)))
    return 0


def cmd_guide_template(args) -> int:
    try:
        image = load_image(args.image)
    except IOError as err:
        return _fail(EXIT_UNREADABLE, str(err))
    try:
        annotation = load_annotation(args.annotation) if args.annotation else None
    except AnnotationError as err:
        return _fail(EXIT_BAD_ANNOTATION, str(err))
    try:
        template = guidance.load_template(args.template)
    except guidance.UnknownTemplateError as err:
        return _fail(EXIT_UNKNOWN_TEMPLATE, str(err))

    tol = config.load_tolerances()
    input_id = annotation.id if annotation else os.path.splitext(os.path.basename(args.image))[0]
    try:
        report = guidance.alg_t(image, annotation, template, input_id, args.mode, tol)
    except guidance.ModeMismatchError as err:
        return _fail(EXIT_MODE_MISMATCH, str(err))
    _emit_report(args, report, image, annotation, tol)
    return 0


def cmd_guide_image(args) -> int:
    try:
        image = load_image(args.image)
    except IOError as err:
        return _fail(EXIT_UNREADABLE, str(err))
    try:
        annotation = load_annotation(args.annotation)
    except AnnotationError as err:
        return _fail(EXIT_BAD_ANNOTATION, str(err))
    try:
        index = load_index(args.index)
        with open(args.profiles, encoding="utf-8") as fh:
            profile_docs = json.load(fh)
    except (OSError, ValueError) as err:
        return _fail(EXIT_UNREADABLE, f"cannot read index or profiles: {err}")

    profiles = {rid: guidance.profile_from_json(doc) for rid, doc in profile_docs.items()}
    tol = config.load_tolerances()
    k = args.k if args.k is not None else tol.search_k
    try:
        report = guidance.alg_i(image, annotation, index, profiles, k, args.mode, tol)
    except guidance.MissingEmbeddingError as err:
        return _fail(EXIT_NO_EMBEDDING, str(err))
    except guidance.ProfileMissError as err:
        return _fail(EXIT_PROFILE_MISS, str(err))
    except guidance.ModeMismatchError as err:
        return _fail(EXIT_MODE_MISMATCH, str(err))
    _emit_report(args, report, image, annotation, tol)
    return 0


def _emit_report(args, report, image, annotation, tol) -> None:
    print(_dump_json(guidance.report_to_json(report)))
    print()
    print(report.text)
    if getattr(args, "report_dir", None):
        canonical = resize_canonical(image)
        profile = guidance.profile_image(image, annotation, report.mode, tol)
        write_report_dir(args.report_dir, report, profile, canonical, annotation, tol)


def cmd_index_build(args) -> int:
    try:
        names = sorted(n for n in os.listdir(args.annotations_dir) if n.endswith(".json"))
    except OSError as err:
        return _fail(EXIT_UNREADABLE, f"cannot list {args.annotations_dir}: {err}")
    if not names:
        return _fail(EXIT_BAD_RECORD, f"no annotation sidecars in {args.annotations_dir}")

    records = []
    profiles: dict[str, dict] = {}
    seen_ids: dict[str, str] = {}
    dim = None
    for name in names:
        path = os.path.join(args.annotations_dir, name)
        try:
            ann = load_annotation(path)
        except AnnotationError as err:
            return _fail(EXIT_BAD_RECORD, f"{name}: {err}")
        if ann.embedding is None:
            return _fail(EXIT_BAD_RECORD, f"{name}: record has no embedding")
        if ann.aesthetic_score is None:
            return _fail(EXIT_BAD_RECORD, f"{name}: record has no aesthetic_score")
        if ann.id in seen_ids:
            return _fail(EXIT_BAD_RECORD,
                         f"{name}: duplicate id {ann.id} (also in {seen_ids[ann.id]})")
        seen_ids[ann.id] = name
        if np.linalg.norm(ann.embedding) < 1e-12:
            return _fail(EXIT_BAD_RECORD, f"{name}: zero embedding vector")
        if dim is None:
            dim = ann.embedding.size
        elif ann.embedding.size != dim:
            return _fail(EXIT_BAD_RECORD,
                         f"{name}: embedding dimension {ann.embedding.size} != {dim}")
        records.append(EmbeddingRecord(ann.id, ann.aesthetic_score, ann.embedding))

        image = _sibling_image(args.annotations_dir, name)
        profile = guidance.profile_image(image, ann)
        profiles[ann.id] = guidance.profile_to_json(profile, ann.id)

    try:
        index = build_index(records)
    except ValueError as err:
        return _fail(EXIT_BAD_RECORD, str(err))
    save_index(index, args.output)
    with open(args.profiles, "w", encoding="utf-8") as fh:
        fh.write(_dump_json(profiles) + "\n")
    print(f"indexed {index.count} records")
    return 0


def _sibling_image(directory: str, annotation_name: str) -> RasterImage | None:
    """Pixels for a sidecar, when a same-stem image sits next to it."""
    stem = os.path.splitext(annotation_name)[0]
    for ext in IMAGE_EXTENSIONS:
        candidate = os.path.join(directory, stem + ext)
        if os.path.isfile(candidate):
            try:
                return load_image(candidate)
            except IOError:
                return None
    return None


# === Parser ===

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alg",
        description="Aesthetic guidance: profile images and render shooting advice.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="print an attribute profile as JSON")
    analyze.add_argument("image")
    analyze.add_argument("annotation", nargs="?", default=None)
    analyze.add_argument("--mode", choices=("landscape", "portrait"), default=None)
    analyze.set_defaults(func=cmd_analyze)

    guide_t = sub.add_parser("guide-template", help="guidance against a photography template")
    guide_t.add_argument("image")
    guide_t.add_argument("annotation", nargs="?", default=None)
    guide_t.add_argument("--template", required=True,
                         help="built-in template name or a spec JSON path")
    guide_t.add_argument("--mode", choices=("landscape", "portrait"), default=None)
    guide_t.add_argument("--report-dir", default=None,
                         help="also write report.json/report.txt/advice.csv and figures here")
    guide_t.set_defaults(func=cmd_guide_template)

    guide_i = sub.add_parser("guide-image", help="guidance from a retrieved guidance image")
    guide_i.add_argument("image")
    guide_i.add_argument("annotation")
    guide_i.add_argument("--index", required=True)
    guide_i.add_argument("--profiles", required=True)
    guide_i.add_argument("-k", type=int, default=None)
    guide_i.add_argument("--mode", choices=("landscape", "portrait"), default=None)
    guide_i.add_argument("--report-dir", default=None,
                         help="also write report.json/report.txt/advice.csv and figures here")
    guide_i.set_defaults(func=cmd_guide_image)

    build = sub.add_parser("index-build", help="build the embedding index and profile sidecar")
    build.add_argument("annotations_dir")
    build.add_argument("-o", "--output", required=True)
    build.add_argument("--profiles", required=True)
    build.set_defaults(func=cmd_index_build)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
