import enum
from typing import Optional, Tuple

import equinox as eqx
import jax.numpy as jnp

from ..image import RasterImage, Rect
from ..matching import BloodBarTemplate, PeakCandidate


class Camp(str, enum.Enum):
    """Team of a hero relative to the player of the video."""

    SELF = "self"
    FRIEND = "friend"
    ENEMY = "enemy"
    UNKNOWN = "unknown"

    @property
    def color(self) -> Tuple[int, int, int]:
        """Drawing color: green, blue, red, or gray for unknown."""
        return _CAMP_COLORS[self]


_CAMP_COLORS = {
    Camp.SELF: (0, 200, 0),
    Camp.FRIEND: (0, 110, 255),
    Camp.ENEMY: (230, 0, 0),
    Camp.UNKNOWN: (128, 128, 128),
}

# bar color channel order is (r, g, b)
_CHANNEL_CAMPS = (Camp.ENEMY, Camp.SELF, Camp.FRIEND)


class CampVerdict(eqx.Module):
    """Either a camp or a false-detection rejection."""

    camp: Optional[Camp] = None
    rejected: bool = False

    def __check_init__(self):
        if (self.camp is None) == (not self.rejected):
            raise ValueError("a verdict holds exactly one of a camp or a rejection")

    @classmethod
    def of(cls, camp: Camp) -> "CampVerdict":
        return cls(camp=camp, rejected=False)

    @classmethod
    def reject(cls) -> "CampVerdict":
        return cls(camp=None, rejected=True)


def sampling_strip(
    det: PeakCandidate, template: BloodBarTemplate, strip_width: int = 4, inset: int = 1
) -> Rect:
    """The left-most strip of the fill area of a detected bar, in frame coordinates.

    The strip is `strip_width` columns wide, starts at the left edge of the
    fill area and spans its height less `inset` rows top and bottom.
    """
    fill = template.fill_box
    height = max(fill.h - 2 * inset, 1)
    top = fill.y + (fill.h - height) // 2
    return Rect(det.x + fill.x, det.y + top, min(strip_width, fill.w), height)


def leftmost_mean_color(
    frame: RasterImage,
    det: PeakCandidate,
    template: BloodBarTemplate,
    strip_width: int = 4,
    inset: int = 1,
) -> Tuple[float, float, float]:
    """Mean color of the left-most fill strip of a detected bar.

    Args:
        frame (RasterImage): RGB frame at the normalized height.
        det (PeakCandidate): Detected template placement.
        template (BloodBarTemplate): Template, for the fill-area geometry.
        strip_width (int, optional): Strip width in pixels. Defaults to 4.
        inset (int, optional): Rows skipped at the top and bottom of the fill. Defaults to 1.

    Returns:
        Tuple[float, float, float]: `(c_r, c_g, c_b)` in [0, 255].

    Raises:
        ValueError: If the frame is not RGB or the bar lies outside it.
    """
    if frame.channels != 3:
        raise ValueError("camp colors need an RGB frame")
    bar = Rect(det.x, det.y, template.width, template.height)
    inside = bar.intersect(frame.rect)
    if inside is None or inside.as_tuple() != bar.as_tuple():
        raise ValueError(f"detection {bar.as_tuple()} lies outside the frame")
    s = sampling_strip(det, template, strip_width, inset)
    region = frame.pixels[s.y : s.bottom, s.x : s.right, :].astype(jnp.float32)
    c = jnp.mean(region.reshape(-1, 3), axis=0)
    return (float(c[0]), float(c[1]), float(c[2]))


def classify_camp(c_r: float, c_g: float, c_b: float) -> CampVerdict:
    """Camp of a bar from its left-most mean color.

    A channel above 100 and above 1.5 times both other channels names the
    camp (red enemy, green self, blue friend). Otherwise a color with every
    channel in [70, 100] is an almost empty bar of unknown camp, and
    anything else is a false detection.

    Example:
        >>> classify_camp(200, 50, 50).camp
        <Camp.ENEMY: 'enemy'>
        >>> classify_camp(120, 110, 115).rejected
        True
    """
    c = (c_r, c_g, c_b)
    for i in range(3):
        others = [c[j] for j in range(3) if j != i]
        if c[i] > 100 and all(c[i] > 1.5 * o for o in others):
            return CampVerdict.of(_CHANNEL_CAMPS[i])
    if all(70 <= v <= 100 for v in c):
        return CampVerdict.of(Camp.UNKNOWN)
    return CampVerdict.reject()
