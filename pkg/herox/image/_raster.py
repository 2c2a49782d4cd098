from typing import Tuple

import equinox as eqx
import jax.numpy as jnp
import numpy as np
from jaxtyping import Array, ArrayLike, Float, UInt8


class Rect(eqx.Module):
    """Axis-aligned pixel rectangle; (x, y) is the top-left corner."""

    x: int
    y: int
    w: int
    h: int

    def __init__(self, x: int, y: int, w: int, h: int):
        if int(w) <= 0 or int(h) <= 0:
            raise ValueError(f"Rect needs positive size, got w={w}, h={h}")
        self.x = int(x)
        self.y = int(y)
        self.w = int(w)
        self.h = int(h)

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.x, self.y, self.w, self.h)

    def shift(self, dx: int, dy: int) -> "Rect":
        return Rect(self.x + dx, self.y + dy, self.w, self.h)

    def intersect(self, other: "Rect"):
        """Overlap of two rects, or None when they do not overlap."""
        x0, y0 = max(self.x, other.x), max(self.y, other.y)
        x1, y1 = min(self.right, other.right), min(self.bottom, other.bottom)
        if x1 <= x0 or y1 <= y0:
            return None
        return Rect(x0, y0, x1 - x0, y1 - y0)

    def scale(self, factor: float) -> "Rect":
        """Map the rect through a uniform coordinate scale, rounding outward to pixels."""
        x0 = int(np.floor(self.x * factor + 0.5))
        y0 = int(np.floor(self.y * factor + 0.5))
        x1 = int(np.floor(self.right * factor + 0.5))
        y1 = int(np.floor(self.bottom * factor + 0.5))
        return Rect(x0, y0, max(x1 - x0, 1), max(y1 - y0, 1))


class RasterImage(eqx.Module):
    """An 8-bit image stored as a `(height, width, channels)` array.

    Attributes:
        pixels (UInt8[Array, "h w c"]): Row-major, channel-interleaved samples.
            Channels is 1 (gray) or 3 (RGB).
    """

    pixels: UInt8[Array, "h w c"]

    def __init__(self, pixels: ArrayLike):
        pixels = jnp.asarray(pixels)
        if pixels.ndim == 2:
            pixels = pixels[:, :, None]
        if pixels.ndim != 3 or pixels.shape[2] not in (1, 3):
            raise ValueError(
                f"RasterImage needs shape (h, w, 1) or (h, w, 3), got {pixels.shape}"
            )
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"RasterImage must be nonempty, got {pixels.shape}")
        if pixels.dtype != jnp.uint8:
            pixels = jnp.clip(jnp.round(pixels), 0, 255).astype(jnp.uint8)
        self.pixels = pixels

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def channels(self) -> int:
        return int(self.pixels.shape[2])

    @property
    def shape(self) -> Tuple[int, int, int]:
        return tuple(self.pixels.shape)

    @property
    def rect(self) -> Rect:
        return Rect(0, 0, self.width, self.height)

    def plane(self) -> UInt8[Array, "h w"]:
        """The single channel of a gray image as an `(h, w)` array."""
        if self.channels != 1:
            raise ValueError("plane() needs a single-channel image")
        return self.pixels[:, :, 0]

    def numpy(self) -> np.ndarray:
        return np.asarray(self.pixels)

    def __repr__(self):
        return f"RasterImage(width={self.width}, height={self.height}, channels={self.channels})"


class MatchMap(eqx.Module):
    """Real-valued field over template placements.

    Attributes:
        values (Float[Array, "h w"]): Matching degree of each placement,
            row-major; all values finite.
    """

    values: Float[Array, "h w"]

    def __init__(self, values: ArrayLike):
        values = jnp.asarray(values, dtype=jnp.float32)
        if values.ndim != 2 or values.size == 0:
            raise ValueError(f"MatchMap needs a nonempty 2-D array, got {values.shape}")
        self.values = values

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    def numpy(self) -> np.ndarray:
        return np.asarray(self.values)

    def __repr__(self):
        return f"MatchMap(width={self.width}, height={self.height})"


class NormalizedFrame(eqx.Module):
    """A frame rescaled to the normalized height.

    Attributes:
        image (RasterImage): The rescaled frame.
        scale (float): Normalized height over source height.
    """

    image: RasterImage
    scale: float

    def to_source(self, rect: Rect) -> Rect:
        """Map a rect from normalized to source coordinates."""
        if self.scale == 1.0:
            return rect
        return rect.scale(1.0 / self.scale)
