import functools
import logging
from typing import Tuple

import numpy as np
from PIL import Image, ImageDraw

from ..camp import Camp
from ..geometry import skill_region_rect
from ..image import RasterImage, Rect, resize
from ..matching import blood_bar_template, DIGIT_BOX, FILL_BOX
from ._glyph import glyph, muted_color
from ._scene import (
    BarSpec,
    BarTruth,
    CircleTruth,
    GroundTruth,
    HudSpec,
    NORMALIZED_HEIGHT,
    normalized_width,
    SceneSpec,
    SpriteSpec,
    SpriteTruth,
    too_close,
)


logger = logging.getLogger(__name__)

BAR_COLORS = {
    Camp.SELF: (46, 204, 64),
    Camp.FRIEND: (52, 120, 232),
    Camp.ENEMY: (214, 48, 48),
}
DIGIT_LEVEL = 230
RING_FILL = (40, 40, 46)
RING_OUTLINE = (225, 225, 225)
SMALL_RINGS = ((215, 300), (300, 230), (320, 130))
SMALL_RING_RADIUS = 22
NOISE_AMPLITUDE = 8

# 3x5 bitmap digits for the level badge
_DIGITS = {
    "0": ("111", "101", "101", "101", "111"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("111", "001", "111", "100", "111"),
    "3": ("111", "001", "111", "001", "111"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "111", "001", "111"),
    "6": ("111", "100", "111", "101", "111"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("111", "101", "111", "101", "111"),
    "9": ("111", "101", "111", "001", "111"),
}


@functools.lru_cache(maxsize=1)
def _bar_base() -> np.ndarray:
    return blood_bar_template().image.numpy()[:, :, 0]


def _draw_digits(px: np.ndarray, text: str):
    d = DIGIT_BOX
    x0 = d.x + (d.w - (4 * len(text) - 1)) // 2
    y0 = d.y + (d.h - 5) // 2
    for k, ch in enumerate(text):
        for r, row in enumerate(_DIGITS[ch]):
            for c, bit in enumerate(row):
                if bit == "1":
                    px[y0 + r, x0 + 4 * k + c] = DIGIT_LEVEL


def bar_pixels(bar: BarSpec) -> np.ndarray:
    """RGB pixels of one bar: template frame, camp fill, level digits."""
    px = np.repeat(_bar_base()[:, :, None], 3, axis=2).copy()
    f = FILL_BOX
    px[f.y : f.bottom, f.x : f.x + bar.filled_pixels] = BAR_COLORS[bar.camp]
    _draw_digits(px, str(bar.level))
    return px


def _background(kind: str, width: int, height: int, rng: np.random.Generator) -> np.ndarray:
    canvas = np.empty((height, width, 3), dtype=np.float32)
    canvas[...] = np.asarray(muted_color(rng), dtype=np.float32)
    if kind == "noise":
        canvas += rng.integers(-NOISE_AMPLITUDE, NOISE_AMPLITUDE + 1, size=canvas.shape)
    elif kind == "textured":
        yy, xx = np.mgrid[0:height, 0:width].astype(np.float32)
        periods = rng.uniform(160, 420, size=2)
        phases = rng.uniform(0, 2 * np.pi, size=2)
        wave = 18 * np.sin(2 * np.pi * xx / periods[0] + phases[0]) + 18 * np.sin(
            2 * np.pi * yy / periods[1] + phases[1]
        )
        canvas += wave[:, :, None]
        canvas += rng.integers(-4, 5, size=canvas.shape)
    return np.clip(np.round(canvas), 0, 255).astype(np.uint8)


def _occlude(draw: ImageDraw.ImageDraw, rect: Rect, rng: np.random.Generator):
    w = int(rng.integers(rect.w // 4, rect.w // 2 + 1))
    h = int(rng.integers(rect.h // 4, rect.h // 2 + 1))
    x = rect.x + int(rng.integers(0, rect.w - w + 1))
    y = rect.y + int(rng.integers(0, rect.h - h + 1))
    draw.rectangle((x, y, x + w - 1, y + h - 1), fill=muted_color(rng))


def _paste_sprite(pil: Image.Image, sprite: SpriteSpec, rng: np.random.Generator):
    g = glyph(sprite.label, sprite.size)
    pil.paste(g, (sprite.x, sprite.y), g)
    if sprite.occluded:
        _occlude(ImageDraw.Draw(pil), sprite.rect, rng)


def _ring(pil: Image.Image, cx: int, cy: int, r: int, label: str, salt: str):
    draw = ImageDraw.Draw(pil)
    draw.ellipse((cx - r, cy - r, cx + r, cy + r), fill=RING_FILL, outline=RING_OUTLINE, width=4)
    side = int(1.2 * r)
    icon = glyph(label, side, salt=salt)
    pil.paste(icon, (cx - side // 2, cy - side // 2), icon)


def _draw_hud(pil: Image.Image, region: Rect, hud: HudSpec) -> CircleTruth:
    cx, cy, r = hud.first_skill
    _ring(pil, region.x + cx, region.y + cy, r, hud.label, "skill0")
    for i, (sx, sy) in enumerate(SMALL_RINGS):
        _ring(pil, region.x + sx, region.y + sy, SMALL_RING_RADIUS, hud.label, f"skill{i + 1}")
    return CircleTruth(cx=float(region.x + cx), cy=float(region.y + cy), r=float(r))


def _to_source(rect: Rect, scale: float) -> Rect:
    return rect if scale == 1.0 else rect.scale(scale)


def _finish(canvas: np.ndarray, width: int, height: int) -> RasterImage:
    image = RasterImage(canvas)
    if (image.width, image.height) != (width, height):
        image = resize(image, width, height)
    return image


def render(spec: SceneSpec) -> Tuple[RasterImage, GroundTruth]:
    """Draw a scene and report its ground truth.

    The scene is drawn at the normalized height: background (with noise for
    the noise and textured kinds), hero glyphs with their occluders, the skill
    wheel, then the blood bars on top. The result is resized to the
    requested frame size. Bars closer than the bar margin are drawn anyway
    and reported in `GroundTruth.warnings`.

    Args:
        spec (SceneSpec): Scene to draw.

    Returns:
        Tuple[RasterImage, GroundTruth]: RGB frame of `spec.width` x `spec.height`
        and its ground truth. The same spec always gives identical pixels.
    """
    nw, nh = spec.normalized_dims
    rng = np.random.default_rng(spec.seed)
    pil = Image.fromarray(_background(spec.background, nw, nh, rng))
    for sprite in spec.sprites:
        _paste_sprite(pil, sprite, rng)
    region, circle = None, None
    if spec.hud is not None:
        region = skill_region_rect((nw, nh))
        circle = _draw_hud(pil, region, spec.hud)
    canvas = np.array(pil)
    for bar in spec.bars:
        canvas[bar.y : bar.y + bar.rect.h, bar.x : bar.x + bar.rect.w] = bar_pixels(bar)

    warnings = []
    for i, a in enumerate(spec.bars):
        for b in spec.bars[i + 1 :]:
            if too_close(a.rect, b.rect):
                warnings.append(f"bars at {a.rect.as_tuple()} and {b.rect.as_tuple()} are too close")
    for w in warnings:
        logger.warning(w)

    scale = spec.scale
    truth = GroundTruth(
        width=spec.width,
        height=spec.height,
        bars=tuple(
            BarTruth(
                rect=b.rect,
                source_rect=_to_source(b.rect, scale),
                camp=b.camp,
                fill=b.fill,
                level=b.level,
                expected_camp=b.expected_camp,
            )
            for b in spec.bars
        ),
        sprites=tuple(
            SpriteTruth(label=s.label, rect=s.rect, source_rect=_to_source(s.rect, scale))
            for s in spec.sprites
        ),
        skill_circle=circle,
        skill_region=region,
        warnings=tuple(warnings),
    )
    return _finish(canvas, spec.width, spec.height), truth


def render_sprite_crop(
    label: str,
    seed: int,
    size: int = 163,
    noise: int = NOISE_AMPLITUDE,
    occlude_probability: float = 0.25,
) -> RasterImage:
    """An appearance-sized crop of a hero glyph for classifier training.

    The glyph is jittered by a few pixels on a random mid-gray background,
    sometimes partly covered by an occluder, with additive uniform noise.
    """
    rng = np.random.default_rng(seed)
    level = rng.uniform(100, 140) * (1 + rng.uniform(-0.05, 0.05, size=3))
    bg = np.empty((size, size, 3), dtype=np.uint8)
    bg[...] = np.clip(np.round(level), 0, 255).astype(np.uint8)
    pil = Image.fromarray(bg)
    side = int(round(size * 0.74))
    jitter = rng.integers(-4, 5, size=2)
    sprite = SpriteSpec(
        label=label,
        x=(size - side) // 2 + int(jitter[0]),
        y=(size - side) // 2 + int(jitter[1]),
        size=side,
        occluded=bool(rng.random() < occlude_probability),
    )
    _paste_sprite(pil, sprite, rng)
    arr = np.asarray(pil).astype(np.int32)
    if noise > 0:
        arr = arr + rng.integers(-noise, noise + 1, size=arr.shape)
    return RasterImage(np.clip(arr, 0, 255).astype(np.uint8))


def render_shop_scene(
    seed: int = 0, width: int = 1280, height: int = 720
) -> Tuple[RasterImage, GroundTruth]:
    """A shop-like screen: rows of bar-framed items with neutral fills.

    The item frames share the blood-bar geometry, so template matching
    finds them, but their gray fills match no camp.
    """
    rng = np.random.default_rng(seed)
    nw, nh = normalized_width(width, height), NORMALIZED_HEIGHT
    canvas = np.empty((nh, nw, 3), dtype=np.uint8)
    canvas[...] = (38, 36, 44)
    pil = Image.fromarray(canvas)
    draw = ImageDraw.Draw(pil)
    base = _bar_base()
    f = FILL_BOX
    columns = [int(nw * c) for c in (0.1, 0.4, 0.7)]
    bars = []
    for row in range(8):
        y = 90 + 70 * row
        draw.line((0, y + 40, nw - 1, y + 40), fill=(90, 90, 90), width=1)
        for x in columns:
            draw.rectangle((x - 52, y - 13, x - 12, y + 27), fill=muted_color(rng))
            for dy in (2, 9):
                length = int(rng.integers(30, 120))
                draw.rectangle((x + 76, y + dy, x + 76 + length, y + dy + 1), fill=(200, 200, 200))
            bars.append((x, y, float(rng.uniform(150, 190)), int(rng.integers(1, 16))))
    canvas = np.array(pil)
    for x, y, fill_level, level in bars:
        px = np.repeat(base[:, :, None], 3, axis=2).copy()
        px[f.y : f.bottom, f.x : f.right] = int(round(fill_level))
        _draw_digits(px, str(level))
        canvas[y : y + px.shape[0], x : x + px.shape[1]] = px
    return _finish(canvas, width, height), GroundTruth(width=width, height=height)
