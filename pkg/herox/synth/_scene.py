import math
from typing import Optional, Tuple

import equinox as eqx

from ..camp import Camp
from ..image import Rect
from ..matching import FILL_BOX, TEMPLATE_HEIGHT, TEMPLATE_WIDTH


NORMALIZED_HEIGHT = 720
BACKGROUNDS = ("solid", "noise", "textured")
BAR_MARGIN = 12


def normalized_width(width: int, height: int) -> int:
    return max(int(math.floor(width * NORMALIZED_HEIGHT / height + 0.5)), 1)


class BarSpec(eqx.Module):
    """A blood bar to draw.

    Attributes:
        x (int): Left edge, normalized-frame pixels.
        y (int): Top edge, normalized-frame pixels.
        camp (Camp): Self, friend or enemy.
        fill (float): Filled fraction of the bar in [0, 1].
        level (int): Level digit in [1, 15].
    """

    x: int
    y: int
    camp: Camp
    fill: float = 1.0
    level: int = 1

    def __check_init__(self):
        if self.camp not in (Camp.SELF, Camp.FRIEND, Camp.ENEMY):
            raise ValueError(f"bars are drawn for self, friend or enemy, got {self.camp}")
        if not 0.0 <= self.fill <= 1.0:
            raise ValueError(f"fill must be in [0, 1], got {self.fill}")
        if not 1 <= self.level <= 15:
            raise ValueError(f"level must be in [1, 15], got {self.level}")

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, TEMPLATE_WIDTH, TEMPLATE_HEIGHT)

    @property
    def filled_pixels(self) -> int:
        return int(math.ceil(self.fill * FILL_BOX.w - 1e-9))

    @property
    def expected_camp(self) -> Optional[Camp]:
        """Camp a detector should read: unknown when empty, None when too thin to tell."""
        if self.filled_pixels == 0:
            return Camp.UNKNOWN
        if self.filled_pixels < 3:
            return None
        return self.camp


class SpriteSpec(eqx.Module):
    """A hero glyph, top-left corner in normalized-frame pixels."""

    label: str
    x: int
    y: int
    size: int = 120
    occluded: bool = False

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, self.size, self.size)


class HudSpec(eqx.Module):
    """Skill wheel of the leading hero, drawn in the skill region.

    Attributes:
        label (str): Hero whose skill icons are drawn.
        first_skill (Tuple[int, int, int]): First-skill ring `(cx, cy, r)`
            relative to the skill region.
    """

    label: str
    first_skill: Tuple[int, int, int] = (90, 270, 48)


class SceneSpec(eqx.Module):
    """Everything needed to render one frame.

    Element positions are in normalized-frame coordinates (720 pixels high,
    width scaled with the aspect ratio); the frame is rendered there and then
    resized to `width` x `height`.
    """

    width: int
    height: int
    bars: Tuple[BarSpec, ...] = ()
    sprites: Tuple[SpriteSpec, ...] = ()
    background: str = "solid"
    hud: Optional[HudSpec] = None
    seed: int = 0

    def __check_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"frame size must be positive, got {self.width}x{self.height}")
        if self.background not in BACKGROUNDS:
            raise ValueError(f"background must be one of {BACKGROUNDS}, got {self.background!r}")
        frame = Rect(0, 0, self.normalized_dims[0], self.normalized_dims[1])
        for bar in self.bars:
            inside = bar.rect.intersect(frame)
            if inside is None or inside.as_tuple() != bar.rect.as_tuple():
                raise ValueError(f"bar {bar.rect.as_tuple()} lies outside the frame")

    @property
    def normalized_dims(self) -> Tuple[int, int]:
        return (normalized_width(self.width, self.height), NORMALIZED_HEIGHT)

    @property
    def scale(self) -> float:
        """Source height over normalized height."""
        return self.height / NORMALIZED_HEIGHT


def expand(rect: Rect, margin: int) -> Rect:
    return Rect(rect.x - margin, rect.y - margin, rect.w + 2 * margin, rect.h + 2 * margin)


def too_close(a: Rect, b: Rect, margin: int = BAR_MARGIN) -> bool:
    """Whether two bars are nearer than `margin` pixels."""
    return expand(a, margin).intersect(b) is not None


class BarTruth(eqx.Module):
    """Ground truth of one drawn bar; rects in normalized and source coordinates."""

    rect: Rect
    source_rect: Rect
    camp: Camp
    fill: float
    level: int
    expected_camp: Optional[Camp]


class SpriteTruth(eqx.Module):
    label: str
    rect: Rect
    source_rect: Rect


class CircleTruth(eqx.Module):
    """Skill ring in normalized-frame coordinates."""

    cx: float
    cy: float
    r: float


class GroundTruth(eqx.Module):
    """What a rendered frame contains.

    Attributes:
        width (int): Source frame width.
        height (int): Source frame height.
        bars (Tuple[BarTruth, ...]): One entry per bar of the scene.
        sprites (Tuple[SpriteTruth, ...]): One entry per sprite.
        skill_circle (Optional[CircleTruth]): First-skill ring when a HUD is drawn.
        skill_region (Optional[Rect]): Skill region, normalized coordinates.
        warnings (Tuple[str, ...]): Scene issues, such as bars drawn too close.
    """

    width: int
    height: int
    bars: Tuple[BarTruth, ...] = ()
    sprites: Tuple[SpriteTruth, ...] = ()
    skill_circle: Optional[CircleTruth] = None
    skill_region: Optional[Rect] = None
    warnings: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        def rect(r):
            return None if r is None else list(r.as_tuple())

        return {
            "width": self.width,
            "height": self.height,
            "bars": [
                {
                    "rect": rect(b.source_rect),
                    "normalized_rect": rect(b.rect),
                    "camp": b.camp.value,
                    "expected_camp": None if b.expected_camp is None else b.expected_camp.value,
                    "fill": b.fill,
                    "level": b.level,
                }
                for b in self.bars
            ],
            "sprites": [
                {"label": s.label, "rect": rect(s.source_rect), "normalized_rect": rect(s.rect)}
                for s in self.sprites
            ],
            "skill_circle": None
            if self.skill_circle is None
            else [self.skill_circle.cx, self.skill_circle.cy, self.skill_circle.r],
            "skill_region": rect(self.skill_region),
            "warnings": list(self.warnings),
        }
