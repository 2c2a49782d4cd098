import math
from typing import Optional, Sequence, Tuple

from ..image import Rect


STANDARD_ASPECT = 16.0 / 9.0

APPEARANCE_SIZE = 163
APPEARANCE_OFFSET = 8
FIRST_SKILL_SIZE = 110


def _round(v: float) -> int:
    return int(math.floor(v + 0.5))


def clamp_rect(rect: Rect, frame_w: int, frame_h: int) -> Rect:
    """Shift `rect` inside a `frame_w` x `frame_h` frame, keeping its size.

    A rect larger than the frame is shrunk to the frame size.
    """
    w, h = min(rect.w, frame_w), min(rect.h, frame_h)
    x = min(max(rect.x, 0), frame_w - w)
    y = min(max(rect.y, 0), frame_h - h)
    return Rect(x, y, w, h)


def appearance_rect(
    bar: Rect,
    frame_dims: Tuple[int, int],
    size: int = APPEARANCE_SIZE,
    offset: int = APPEARANCE_OFFSET,
) -> Rect:
    """Square crop under a blood bar, where the hero model stands.

    The crop is horizontally centred on the bar and its top edge sits
    `offset` pixels below the bar's bottom edge, then it is shifted inside
    the frame.

    Args:
        bar (Rect): Blood-bar box in frame coordinates.
        frame_dims (Tuple[int, int]): Frame `(width, height)`.
        size (int, optional): Side of the crop. Defaults to 163.
        offset (int, optional): Gap below the bar. Defaults to 8.

    Example:
        >>> appearance_rect(Rect(607, 300, 66, 14), (1280, 720)).as_tuple()
        (559, 322, 163, 163)
    """
    cx = bar.x + bar.w // 2
    rect = Rect(cx - size // 2, bar.bottom + offset, size, size)
    return clamp_rect(rect, *frame_dims)


def skill_region_rect(frame_dims: Tuple[int, int]) -> Rect:
    """The leading hero's skill area, compensated for the aspect ratio.

    With `w_norm = 16/9 * h`: `x = 0.5 w + 0.1875 w_norm`, `y = 0.475 h`,
    side `0.5 h`, rounded and shifted inside the frame.

    Example:
        >>> skill_region_rect((1280, 720)).as_tuple()
        (880, 342, 360, 360)
    """
    w, h = frame_dims
    w_norm = h * STANDARD_ASPECT
    side = _round(0.5 * h)
    rect = Rect(_round(0.5 * w + 0.1875 * w_norm), _round(0.475 * h), side, side)
    return clamp_rect(rect, w, h)


def first_skill_rect(
    region_dims: Tuple[int, int], circles: Sequence, size: int = FIRST_SKILL_SIZE
) -> Optional[Rect]:
    """Fixed-size crop around the largest detected skill circle.

    Args:
        region_dims (Tuple[int, int]): Skill region `(width, height)`.
        circles (Sequence[Circle]): Circles in region coordinates, largest first.
        size (int, optional): Crop side. Defaults to 110.

    Returns:
        Optional[Rect]: The crop in region coordinates, or None without circles.

    Example:
        >>> first_skill_rect((360, 360), [Circle(60, 300, 45, 200.0)]).as_tuple()
        (5, 245, 110, 110)
    """
    if len(circles) == 0:
        return None
    c = circles[0]
    rect = Rect(_round(c.cx) - size // 2, _round(c.cy) - size // 2, size, size)
    return clamp_rect(rect, *region_dims)
