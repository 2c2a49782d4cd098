import logging
import os
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ._raster import RasterImage


logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


class ImageReadError(OSError):
    """Raised when an image file is missing or cannot be decoded."""


def read_png(path: PathLike) -> RasterImage:
    """Load an image file as 8-bit gray or RGB.

    Gray files stay single-channel; everything else is converted to RGB.

    Raises:
        ImageReadError: If the file is missing or not a readable image.
    """
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode not in ("L", "RGB"):
                im = im.convert("RGB")
            pixels = np.asarray(im, dtype=np.uint8)
    except (FileNotFoundError, UnidentifiedImageError, OSError) as e:
        raise ImageReadError(f"cannot read image {path}: {e}") from e
    return RasterImage(pixels)


def write_png(img: RasterImage, path: PathLike, atomic: bool = False) -> Path:
    """Save an image as PNG.

    Args:
        img (RasterImage): Image to save.
        path (PathLike): Destination file.
        atomic (bool, optional): Write to a sibling temporary file, then rename.

    Returns:
        Path: The written path.
    """
    path = Path(path)
    pixels = img.numpy()
    pil = Image.fromarray(pixels[:, :, 0] if img.channels == 1 else pixels)
    if not atomic:
        pil.save(path, format="PNG")
        return path
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    pil.save(tmp, format="PNG")
    os.replace(tmp, path)
    logger.debug("wrote %s", path)
    return path
