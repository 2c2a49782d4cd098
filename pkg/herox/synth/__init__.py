from ._corpus import (
    DEFAULT_DIMS,
    DEFAULT_LABELS,
    load_manifest,
    ManifestError,
    random_scene,
    render_corpus,
    SCHEMA_VERSION,
)
from ._glyph import glyph, label_seed
from ._render import BAR_COLORS, bar_pixels, render, render_shop_scene, render_sprite_crop
from ._scene import (
    BarSpec,
    BarTruth,
    CircleTruth,
    GroundTruth,
    HudSpec,
    SceneSpec,
    SpriteSpec,
    SpriteTruth,
    too_close,
)


__all__ = [
    "BAR_COLORS",
    "bar_pixels",
    "BarSpec",
    "BarTruth",
    "CircleTruth",
    "DEFAULT_DIMS",
    "DEFAULT_LABELS",
    "glyph",
    "GroundTruth",
    "HudSpec",
    "label_seed",
    "load_manifest",
    "ManifestError",
    "random_scene",
    "render",
    "render_corpus",
    "render_shop_scene",
    "render_sprite_crop",
    "SceneSpec",
    "SCHEMA_VERSION",
    "SpriteSpec",
    "SpriteTruth",
    "too_close",
]
