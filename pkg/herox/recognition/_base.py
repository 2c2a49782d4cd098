import contextlib
import enum
from typing import ClassVar, ContextManager, Iterable, Tuple

from ..core import StateFunc
from ..image import RasterImage


UNKNOWN_LABEL = "unknown"

Prediction = Tuple[Tuple[str, float], ...]


class RoiType(str, enum.Enum):
    """Crop a classifier is trained on."""

    APPEARANCE = "appearance"
    SKILL_REGION = "skill_region"
    FIRST_SKILL = "first_skill"

    @property
    def size(self) -> int:
        """Side of the square crop in pixels."""
        return _ROI_SIZES[self]


_ROI_SIZES = {
    RoiType.APPEARANCE: 163,
    RoiType.SKILL_REGION: 360,
    RoiType.FIRST_SKILL: 110,
}


class ClassifierError(RuntimeError):
    """Raised when a classifier cannot be loaded or fails to answer."""


def normalize_prediction(pairs: Iterable[Tuple[str, float]]) -> Prediction:
    """Clip confidences to [0, 1], keep one entry per label, sort descending.

    Duplicate labels keep their highest confidence; ties are ordered by label.
    """
    best = {}
    for label, conf in pairs:
        conf = min(max(float(conf), 0.0), 1.0)
        label = str(label)
        if conf >= best.get(label, -1.0):
            best[label] = conf
    return tuple(sorted(best.items(), key=lambda kv: (-kv[1], kv[0])))


class HeroClassifier(StateFunc):
    """Hero-name classifier over an image crop.

    Implementations return `(label, confidence)` pairs with confidences in
    [0, 1], sorted by descending confidence, labels unique. Implementations
    that cannot take concurrent calls set `thread_safe = False` and own a
    `_lock`; the recognition pipeline then holds it around every call.
    """

    thread_safe: ClassVar[bool] = True

    @property
    def call_lock(self) -> ContextManager:
        """Held around each pipeline call; a no-op for thread-safe classifiers."""
        if self.thread_safe:
            return contextlib.nullcontext()
        return self._lock

    def classify(self, image: RasterImage) -> Prediction:
        return normalize_prediction(self._predict(image))
