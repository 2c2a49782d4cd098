from collections import defaultdict
from typing import Optional

import equinox as eqx

from ._base import Prediction, UNKNOWN_LABEL


class RecognitionResult(eqx.Module):
    """A hero name with its confidence and the ROI it came from.

    Attributes:
        label (str): Hero name, or `"unknown"`.
        confidence (float): Confidence in [0, 1].
        source (str): `"appearance"`, `"skill_region"`, `"first_skill"` or `"fused"`.
    """

    label: str
    confidence: float
    source: str = "fused"

    @property
    def known(self) -> bool:
        return self.label != UNKNOWN_LABEL


def top_label(
    prediction: Prediction, threshold: float = 0.0, source: str = "appearance"
) -> RecognitionResult:
    """First entry of a prediction, or unknown when empty or below `threshold`."""
    if len(prediction) == 0:
        return RecognitionResult(UNKNOWN_LABEL, 0.0, source)
    label, conf = prediction[0]
    if conf < threshold:
        return RecognitionResult(UNKNOWN_LABEL, conf, source)
    return RecognitionResult(label, conf, source)


def fuse_leading(
    appearance: Prediction,
    skill_region: Optional[Prediction] = None,
    first_skill: Optional[Prediction] = None,
    threshold: float = 0.5,
) -> RecognitionResult:
    """Fuse the leading hero's per-ROI predictions.

    Each label's fused confidence is the mean of its confidence over the
    available predictions, a label missing from a prediction counting 0.
    The best label wins (ties broken by name); a fused confidence under
    `threshold` gives `"unknown"`.

    Args:
        appearance (Prediction): Prediction on the appearance crop.
        skill_region (Prediction, optional): Prediction on the skill region.
        first_skill (Prediction, optional): Prediction on the first-skill crop.
        threshold (float, optional): Minimum fused confidence. Defaults to 0.5.

    Returns:
        RecognitionResult: The fused result, `source="fused"`.

    Example:
        >>> fuse_leading((("Arthur", 1.0),), (("Arthur", 0.6), ("Daji", 0.2)))
        RecognitionResult(label='Arthur', confidence=0.8, source='fused')
    """
    available = [p for p in (appearance, skill_region, first_skill) if p is not None]
    totals = defaultdict(float)
    for prediction in available:
        for label, conf in prediction:
            totals[label] += conf
    if not totals:
        return RecognitionResult(UNKNOWN_LABEL, 0.0, "fused")
    label, total = min(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    conf = total / len(available)
    if conf < threshold:
        return RecognitionResult(UNKNOWN_LABEL, conf, "fused")
    return RecognitionResult(label, conf, "fused")
