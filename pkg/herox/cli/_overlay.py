from pathlib import Path
from typing import Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw

from ..camp import Camp
from ..image import RasterImage, Rect


def draw_overlay(
    image: RasterImage, boxes: Sequence[Tuple[Rect, Camp]], width: int = 2
) -> RasterImage:
    """Draw camp-colored box outlines; green self, blue friend, red enemy, gray unknown.

    Without boxes the image is returned unchanged (as RGB).
    """
    pixels = image.numpy()
    if image.channels == 1:
        pixels = np.repeat(pixels, 3, axis=2)
    if len(boxes) == 0:
        return RasterImage(pixels)
    pil = Image.fromarray(pixels)
    draw = ImageDraw.Draw(pil)
    for rect, camp in boxes:
        draw.rectangle((rect.x, rect.y, rect.right - 1, rect.bottom - 1), outline=camp.color, width=width)
    return RasterImage(np.asarray(pil))


def pick_frame_entry(payload: dict, frame_path: Path, dims: Tuple[int, int]) -> dict:
    """The entry of a detection JSON that belongs to `frame_path`.

    Raises:
        ValueError: If no entry matches or its frame size differs from `dims`.
    """
    frames = payload.get("frames")
    if payload.get("schema") != 1 or not isinstance(frames, list):
        raise ValueError("not a detection JSON (schema 1)")
    named = [f for f in frames if Path(f.get("file", "")).name == frame_path.name]
    if named:
        entry = named[0]
    elif len(frames) == 1:
        entry = frames[0]
    else:
        raise ValueError(f"no detections for {frame_path.name}")
    if (entry.get("width"), entry.get("height")) != dims:
        raise ValueError(
            f"detections are for a {entry.get('width')}x{entry.get('height')} frame, "
            f"image is {dims[0]}x{dims[1]}"
        )
    return entry


def boxes_of(entry: dict) -> Sequence[Tuple[Rect, Camp]]:
    return [(Rect(*d["bbox"]), Camp(d["camp"])) for d in entry.get("detections", [])]
