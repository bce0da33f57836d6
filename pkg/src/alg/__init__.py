"""Aesthetic guidance engine: profiles images on color, lighting and
composition, compares them to photography templates or retrieved guidance
images, and renders the differences as natural-language shooting advice."""

from .annotations import AnnotationError, AnnotationSidecar, load_annotation, parse_annotation
from .guidance import (
    AttributeAdvice,
    AttributeProfile,
    GuidanceReport,
    MissingEmbeddingError,
    ModeMismatchError,
    ProfileMissError,
    TemplateSpec,
    UnknownTemplateError,
    alg_i,
    alg_t,
    compare_profiles,
    load_template,
    profile_image,
    render_text,
    route_mode,
)
from .raster import RasterImage

__version__ = "0.1.0"

__all__ = [
    "AnnotationError",
    "AnnotationSidecar",
    "AttributeAdvice",
    "AttributeProfile",
    "GuidanceReport",
    "MissingEmbeddingError",
    "ModeMismatchError",
    "ProfileMissError",
    "RasterImage",
    "TemplateSpec",
    "UnknownTemplateError",
    "alg_i",
    "alg_t",
    "compare_profiles",
    "load_annotation",
    "load_template",
    "parse_annotation",
    "profile_image",
    "render_text",
    "route_mode",
    "__version__",
]
