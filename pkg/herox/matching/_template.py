import os
from pathlib import Path
from typing import Tuple, Union

import equinox as eqx
import jax.numpy as jnp
import numpy as np
from jaxtyping import Array, Bool, Float
from scipy import ndimage

from ..image import RasterImage, read_png, Rect, to_grayscale, write_png


TEMPLATE_WIDTH = 66
TEMPLATE_HEIGHT = 14

# gray levels of the bar frame
OUTLINE_LEVEL = 12
BADGE_LEVEL = 64
RIM_LEVEL = 196
EMPTY_LEVEL = 88

BADGE_BOX = Rect(1, 1, 12, 12)
DIGIT_BOX = Rect(3, 3, 8, 8)
SEPARATOR_X = 13
FILL_BOX = Rect(14, 3, 51, 8)
RIM_ROWS = (1, 2, 11, 12)

TEMPLATE_FILE = "template.png"
MASK_FILE = "template_mask.png"


class BloodBarTemplate(eqx.Module):
    """Gray blood-bar template with its matching mask.

    Attributes:
        image (RasterImage): Single-channel template.
        mask (Bool[Array, "h w"]): True where the pixel takes part in matching.
        fill_box (Rect): Bounding box of the fill area (the largest masked-out
            region), in template coordinates.
    """

    image: RasterImage
    mask: Bool[Array, "h w"]
    fill_box: Rect

    def __init__(self, image: RasterImage, mask, fill_box: Rect = None):
        if image.channels != 1:
            raise ValueError("template image must be single-channel")
        mask = jnp.asarray(mask).astype(bool)
        if mask.shape != (image.height, image.width):
            raise ValueError(
                f"mask shape {mask.shape} differs from template {(image.height, image.width)}"
            )
        if not bool(jnp.any(mask)):
            raise ValueError("template mask selects no pixels")
        self.image = image
        self.mask = mask
        self.fill_box = fill_box if fill_box is not None else _fill_box_from_mask(mask)

    @property
    def width(self) -> int:
        return self.image.width

    @property
    def height(self) -> int:
        return self.image.height

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.width, self.height)

    @property
    def n_mask(self) -> int:
        return int(jnp.sum(self.mask))

    @property
    def holes(self) -> Tuple[Rect, ...]:
        """Disjoint rectangles that together cover the masked-out pixels."""
        return _mask_holes(np.asarray(self.mask))

    def weights(self) -> Float[Array, "h w"]:
        """Masked, mean-subtracted template values (zero outside the mask)."""
        t = self.image.plane().astype(jnp.float32)
        m = self.mask.astype(jnp.float32)
        mean = jnp.sum(t * m) / jnp.sum(m)
        return (t - mean) * m

    def __repr__(self):
        return f"BloodBarTemplate(width={self.width}, height={self.height}, n_mask={self.n_mask})"


def _fill_box_from_mask(mask) -> Rect:
    labels, count = ndimage.label(~np.asarray(mask))
    if count == 0:
        raise ValueError("template mask has no ignored region to sample the fill from")
    sizes = ndimage.sum_labels(np.ones_like(labels), labels, index=range(1, count + 1))
    largest = int(np.argmax(sizes)) + 1
    ys, xs = np.nonzero(labels == largest)
    return Rect(xs.min(), ys.min(), xs.max() - xs.min() + 1, ys.max() - ys.min() + 1)


def _mask_holes(mask: np.ndarray) -> Tuple[Rect, ...]:
    labels, _ = ndimage.label(~mask)
    holes = []
    for index, region in enumerate(ndimage.find_objects(labels), start=1):
        ys, xs = region
        inside = labels[region] == index
        if inside.all():
            holes.append(Rect(int(xs.start), int(ys.start), inside.shape[1], inside.shape[0]))
            continue
        # ragged region: one rectangle per horizontal run
        for dy, row in enumerate(inside):
            edges = np.flatnonzero(np.diff(np.concatenate([[0], row.astype(np.int8), [0]])))
            for start, stop in zip(edges[::2], edges[1::2]):
                holes.append(
                    Rect(int(xs.start + start), int(ys.start + dy), int(stop - start), 1)
                )
    return tuple(holes)


def blood_bar_template() -> BloodBarTemplate:
    """The built-in 66x14 blood-bar template.

    Layout: a dark one-pixel outline; a 12x12 level badge on the left whose
    8x8 digit box is masked out; a dark separator column; light rims two
    pixels high above and below a 51x8 fill area that is masked out.

    Example:
        >>> t = blood_bar_template()
        >>> t.dims, t.fill_box.as_tuple()
        ((66, 14), (14, 3, 51, 8))
    """
    img = np.full((TEMPLATE_HEIGHT, TEMPLATE_WIDTH), OUTLINE_LEVEL, dtype=np.uint8)
    b = BADGE_BOX
    img[b.y : b.bottom, b.x : b.right] = BADGE_LEVEL
    img[1:-1, SEPARATOR_X] = OUTLINE_LEVEL
    f = FILL_BOX
    for row in RIM_ROWS:
        img[row, f.x : f.right] = RIM_LEVEL
    img[f.y : f.bottom, f.x : f.right] = EMPTY_LEVEL

    mask = np.ones_like(img, dtype=bool)
    mask[f.y : f.bottom, f.x : f.right] = False
    d = DIGIT_BOX
    mask[d.y : d.bottom, d.x : d.right] = False
    return BloodBarTemplate(RasterImage(img), mask, fill_box=FILL_BOX)


def load_template(
    image_path: Union[str, os.PathLike], mask_path: Union[str, os.PathLike]
) -> BloodBarTemplate:
    """Load a template PNG and its 0/255 mask PNG."""
    image = to_grayscale(read_png(image_path))
    mask = read_png(mask_path).pixels[:, :, 0] > 127
    return BloodBarTemplate(image, mask)


def save_template(template: BloodBarTemplate, directory: Union[str, os.PathLike]):
    """Write `template.png` and `template_mask.png` into `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_png(template.image, directory / TEMPLATE_FILE)
    mask = RasterImage(jnp.where(template.mask, 255, 0).astype(jnp.uint8))
    write_png(mask, directory / MASK_FILE)
    return directory / TEMPLATE_FILE, directory / MASK_FILE
