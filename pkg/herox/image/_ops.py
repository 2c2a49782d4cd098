import math
from typing import Tuple

import jax.image
import jax.numpy as jnp
from equinox import filter_jit

from ._raster import NormalizedFrame, RasterImage, Rect


# ITU-R BT.601 luma weights in thousandths
_LUMA = (299, 587, 114)


@filter_jit
def _luma(pixels):
    rgb = pixels.astype(jnp.int32)
    acc = _LUMA[0] * rgb[..., 0] + _LUMA[1] * rgb[..., 1] + _LUMA[2] * rgb[..., 2]
    # round half up, exact in integers
    return jnp.clip((acc + 500) // 1000, 0, 255).astype(jnp.uint8)[..., None]


def to_grayscale(img: RasterImage) -> RasterImage:
    """Convert an RGB image to 8-bit luma.

    Single-channel input is returned unchanged.

    Args:
        img (RasterImage): RGB or gray image.

    Returns:
        RasterImage: Gray image with `round(0.299 R + 0.587 G + 0.114 B)` per pixel.

    Example:
        >>> to_grayscale(RasterImage(jnp.array([[[100, 200, 50]]], dtype=jnp.uint8))).pixels
        Array([[[153]]], dtype=uint8)
    """
    if img.channels == 1:
        return img
    return RasterImage(_luma(img.pixels))


@filter_jit
def _resize_bilinear(pixels, shape):
    out = jax.image.resize(
        pixels.astype(jnp.float32), shape, method="linear", antialias=False
    )
    return jnp.clip(jnp.round(out), 0, 255).astype(jnp.uint8)


def resize(img: RasterImage, width: int, height: int) -> RasterImage:
    """Bilinear resize to `width` x `height`."""
    if width <= 0 or height <= 0:
        raise ValueError(f"resize target must be positive, got {width}x{height}")
    if (width, height) == (img.width, img.height):
        return img
    return RasterImage(_resize_bilinear(img.pixels, (height, width, img.channels)))


def normalize_height(img: RasterImage, target: int = 720) -> NormalizedFrame:
    """Rescale a frame to the normalized height, keeping its aspect ratio.

    Args:
        img (RasterImage): Source frame.
        target (int, optional): Normalized height in pixels. Defaults to 720.

    Returns:
        NormalizedFrame: The rescaled image and `target / img.height`.

    Raises:
        ValueError: If `target` is not positive.

    Example:
        >>> frame = normalize_height(RasterImage(jnp.zeros((1080, 1920, 3), jnp.uint8)))
        >>> frame.image.width, frame.image.height, frame.scale
        (1280, 720, 0.6666666666666666)
    """
    if target <= 0:
        raise ValueError(f"target height must be positive, got {target}")
    if img.height == target:
        return NormalizedFrame(image=img, scale=1.0)
    width = max(int(math.floor(img.width * target / img.height + 0.5)), 1)
    return NormalizedFrame(image=resize(img, width, target), scale=target / img.height)


def crop(img: RasterImage, rect: Rect) -> Tuple[RasterImage, Rect]:
    """Cut `rect` out of `img`, clamped to the image borders.

    Args:
        img (RasterImage): Source image.
        rect (Rect): Requested region in image coordinates.

    Returns:
        Tuple[RasterImage, Rect]: The cropped image and the rect actually used.

    Raises:
        ValueError: If `rect` does not intersect the image.
    """
    actual = rect.intersect(img.rect)
    if actual is None:
        raise ValueError(f"{rect} does not intersect a {img.width}x{img.height} image")
    pixels = img.pixels[actual.y : actual.bottom, actual.x : actual.right, :]
    return RasterImage(pixels), actual
