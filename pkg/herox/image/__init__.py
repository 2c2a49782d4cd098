from ._filters import maximum_filter
from ._io import ImageReadError, read_png, write_png
from ._ops import crop, normalize_height, resize, to_grayscale
from ._raster import MatchMap, NormalizedFrame, RasterImage, Rect


__all__ = [
    "crop",
    "ImageReadError",
    "MatchMap",
    "maximum_filter",
    "normalize_height",
    "NormalizedFrame",
    "RasterImage",
    "read_png",
    "Rect",
    "resize",
    "to_grayscale",
    "write_png",
]
