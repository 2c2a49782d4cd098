import logging
import math
from typing import List, Optional, Tuple

import equinox as eqx
import jax.numpy as jnp
import numpy as np
from equinox import filter_jit
from jax import lax

from ..image import crop, RasterImage, Rect, to_grayscale
from ._roi import first_skill_rect


logger = logging.getLogger(__name__)

_SOBEL_X = jnp.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])

R_MIN = 30
R_MAX = 70


class Circle(eqx.Module):
    """A detected circle.

    Attributes:
        cx (float): Centre column.
        cy (float): Centre row.
        r (float): Radius in pixels.
        accumulator_strength (float): Smoothed vote count at the peak.
    """

    cx: float
    cy: float
    r: float
    accumulator_strength: float

    def __check_init__(self):
        if self.r <= 0:
            raise ValueError(f"circle radius must be positive, got {self.r}")

    def shift(self, dx: float, dy: float) -> "Circle":
        return Circle(self.cx + dx, self.cy + dy, self.r, self.accumulator_strength)


@filter_jit
def _sobel(gray):
    g = jnp.pad(gray.astype(jnp.float32), 1, mode="edge")
    kernels = jnp.stack([_SOBEL_X, _SOBEL_X.T])[:, None]
    out = lax.conv_general_dilated(
        g[None, None], kernels, (1, 1), "VALID", precision=lax.Precision.HIGHEST
    )[0]
    return out[0], out[1]


@filter_jit
def _smooth_and_peaks(acc, spatial):
    box = lax.reduce_window(
        acc, 0.0, lax.add, (3, 3, 3), (1, 1, 1), ((1, 1), (1, 1), (1, 1))
    )
    k = 2 * spatial + 1
    local = lax.reduce_window(
        box,
        -jnp.inf,
        lax.max,
        (3, k, k),
        (1, 1, 1),
        ((1, 1), (spatial, spatial), (spatial, spatial)),
    )
    return box, box == local


def detect_circles(
    gray: RasterImage,
    r_min: int = R_MIN,
    r_max: int = R_MAX,
    edge_fraction: float = 0.25,
    edge_floor: float = 40.0,
    vote_fraction: float = 0.5,
    min_distance: Optional[float] = None,
) -> List[Circle]:
    """Circles found by gradient Hough voting.

    Sobel edges vote, along both gradient directions, for centres at every
    radius in `[r_min, r_max]`. The accumulator is box-smoothed over 3x3x3
    cells; local maxima whose votes reach `vote_fraction * 2 * pi * r` are
    kept, and of peaks closer than `min_distance` only the strongest stays.

    Args:
        gray (RasterImage): Image to search; RGB is converted.
        r_min (int, optional): Smallest radius. Defaults to 30.
        r_max (int, optional): Largest radius. Defaults to 70.
        edge_fraction (float, optional): Edge threshold relative to the
            strongest gradient. Defaults to 0.25.
        edge_floor (float, optional): Absolute minimum gradient magnitude.
        vote_fraction (float, optional): Required votes per circumference pixel.
        min_distance (float, optional): Minimum centre distance between
            circles. Defaults to `r_min / 2`.

    Returns:
        List[Circle]: Circles by descending radius, then descending votes.

    Raises:
        ValueError: If `r_min >= r_max` or `r_min < 1`.
    """
    if r_min < 1 or r_min >= r_max:
        raise ValueError(f"need 1 <= r_min < r_max, got r_min={r_min}, r_max={r_max}")
    plane = to_grayscale(gray).plane()
    h, w = plane.shape
    gx, gy = _sobel(plane)
    mag = jnp.hypot(gx, gy)
    peak_mag = float(jnp.max(mag))
    if peak_mag <= 0:
        return []
    ys, xs = jnp.nonzero(mag >= max(edge_floor, edge_fraction * peak_mag))
    if ys.size == 0:
        return []
    ux = gx[ys, xs] / mag[ys, xs]
    uy = gy[ys, xs] / mag[ys, xs]

    radii = jnp.arange(r_min, r_max + 1, dtype=jnp.float32)
    n_r = radii.shape[0]
    acc = jnp.zeros((n_r, h, w), dtype=jnp.float32)
    r_idx = jnp.broadcast_to(jnp.arange(n_r)[None, :], (ys.size, n_r))
    for sign in (1.0, -1.0):
        cx = jnp.round(xs[:, None] + sign * radii[None, :] * ux[:, None]).astype(jnp.int32)
        cy = jnp.round(ys[:, None] + sign * radii[None, :] * uy[:, None]).astype(jnp.int32)
        ok = (cx >= 0) & (cx < w) & (cy >= 0) & (cy < h)
        # out-of-range votes land on a dropped index
        acc = acc.at[
            jnp.where(ok, r_idx, n_r), jnp.where(ok, cy, 0), jnp.where(ok, cx, 0)
        ].add(1.0, mode="drop")

    spatial = max(int(r_min) // 3, 2)
    box, peaks = _smooth_and_peaks(acc, spatial)
    needed = vote_fraction * 2.0 * math.pi * np.asarray(radii)
    box_np = np.asarray(box)
    ri, ci, cj = np.nonzero(np.asarray(peaks) & (box_np >= needed[:, None, None]))
    if ri.size == 0:
        return []
    votes = box_np[ri, ci, cj]
    min_distance = r_min / 2.0 if min_distance is None else min_distance

    kept: List[Tuple[float, float, float, float]] = []
    for i in np.argsort(-votes, kind="stable"):
        y, x, r = float(ci[i]), float(cj[i]), float(radii[ri[i]])
        if all(math.hypot(x - k[0], y - k[1]) >= min_distance for k in kept):
            kept.append((x, y, r, float(votes[i])))
    kept.sort(key=lambda k: (-k[2], -k[3]))
    logger.debug("detected %d circles in %dx%d image", len(kept), w, h)
    return [Circle(cx=x, cy=y, r=r, accumulator_strength=v) for x, y, r, v in kept]


def find_first_skill(
    skill_region: RasterImage, r_min: int = R_MIN, r_max: int = R_MAX, size: int = 110
) -> Tuple[Optional[Rect], List[Circle]]:
    """Locate the first-skill crop inside an extracted skill region.

    Circles are searched in the lower-left quadrant of the region and mapped
    back to region coordinates.

    Returns:
        Tuple[Optional[Rect], List[Circle]]: The crop in region coordinates
        (None when no circle is found) and the circles used.
    """
    half_w, half_h = skill_region.width // 2, skill_region.height // 2
    quadrant, actual = crop(
        skill_region,
        Rect(0, half_h, max(half_w, 1), max(skill_region.height - half_h, 1)),
    )
    circles = [
        c.shift(actual.x, actual.y) for c in detect_circles(quadrant, r_min, r_max)
    ]
    return first_skill_rect((skill_region.width, skill_region.height), circles, size), circles
