from ..image import Rect
from ._hough import Circle, detect_circles, find_first_skill
from ._roi import (
    appearance_rect,
    APPEARANCE_SIZE,
    clamp_rect,
    FIRST_SKILL_SIZE,
    first_skill_rect,
    skill_region_rect,
)


__all__ = [
    "appearance_rect",
    "APPEARANCE_SIZE",
    "Circle",
    "clamp_rect",
    "detect_circles",
    "find_first_skill",
    "FIRST_SKILL_SIZE",
    "first_skill_rect",
    "Rect",
    "skill_region_rect",
]
