import hashlib

import numpy as np
from PIL import Image, ImageDraw


GLYPH_SIZE = 120


def label_seed(label: str, salt: str = "sprite") -> int:
    """Stable 64-bit seed derived from a label."""
    digest = hashlib.sha256(f"{salt}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def muted_color(rng: np.random.Generator, dark: bool = None):
    """A low-saturation color far from the empty-bar gray band.

    No channel exceeds another by more than about 25%, so glyphs never
    satisfy a camp color rule.
    """
    if dark is None:
        dark = bool(rng.random() < 0.5)
    level = rng.uniform(20, 60) if dark else rng.uniform(140, 230)
    tint = rng.uniform(-0.1, 0.1, size=3)
    return tuple(int(v) for v in np.clip(np.round(level * (1 + tint)), 0, 255))


def glyph(label: str, size: int = GLYPH_SIZE, salt: str = "sprite") -> Image.Image:
    """Procedural RGBA glyph that stands for a hero label.

    The same label and salt always give the same glyph; distinct labels
    give unrelated shapes.
    """
    rng = np.random.default_rng(label_seed(label, salt))
    img = Image.new("RGBA", (GLYPH_SIZE, GLYPH_SIZE), (0, 0, 0, 0))
    draw = ImageDraw.Draw(img)
    s = GLYPH_SIZE

    body_dark = bool(rng.random() < 0.5)
    inset = rng.integers(6, 20, size=4)
    draw.ellipse(
        (inset[0], inset[1], s - inset[2], s - inset[3]),
        fill=muted_color(rng, body_dark) + (255,),
    )
    for _ in range(int(rng.integers(5, 9))):
        kind = rng.integers(0, 4)
        color = muted_color(rng, not body_dark) + (255,)
        x0, y0 = rng.integers(4, s - 40, size=2)
        w, h = rng.integers(14, 44, size=2)
        box = (int(x0), int(y0), int(x0 + w), int(y0 + h))
        if kind == 0:
            draw.rectangle(box, fill=color)
        elif kind == 1:
            draw.ellipse(box, fill=color)
        elif kind == 2:
            draw.polygon([(box[0], box[3]), ((box[0] + box[2]) // 2, box[1]), (box[2], box[3])], fill=color)
        else:
            draw.line((box[0], box[1], box[2], box[3]), fill=color, width=int(rng.integers(3, 8)))
    if size != GLYPH_SIZE:
        img = img.resize((size, size), Image.BILINEAR)
    return img
