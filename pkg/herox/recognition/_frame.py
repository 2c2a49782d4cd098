import logging
from typing import List, Optional, Sequence, Tuple

import equinox as eqx

from ..camp import Camp
from ..detection import Detection
from ..geometry import find_first_skill, FIRST_SKILL_SIZE, skill_region_rect
from ..image import crop, RasterImage, Rect
from ._base import HeroClassifier, Prediction
from ._fusion import fuse_leading, RecognitionResult, top_label


logger = logging.getLogger(__name__)


def run_classifier(classifier: HeroClassifier, image: RasterImage) -> Prediction:
    """Classify `image`, serialising calls to classifiers that are not thread safe."""
    with classifier.call_lock:
        return classifier.classify(image)


class ClassifierSet(eqx.Module):
    """The classifiers used for recognition, one per ROI type.

    Only `appearance` is required; the leading hero's skill crops are
    classified when the matching classifier is present.
    """

    appearance: HeroClassifier
    skill_region: Optional[HeroClassifier] = None
    first_skill: Optional[HeroClassifier] = None


class RecognitionParams(eqx.Module):
    """Recognition thresholds and first-skill search parameters."""

    fuse_threshold: float = 0.5
    appearance_threshold: float = 0.5
    r_min: int = 30
    r_max: int = 70
    first_skill_size: int = FIRST_SKILL_SIZE

    def __check_init__(self):
        for name in ("fuse_threshold", "appearance_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not 0 < self.r_min <= self.r_max:
            raise ValueError(f"need 0 < r_min <= r_max, got {self.r_min}, {self.r_max}")


class HeroRecognition(eqx.Module):
    """Recognition of one detected hero.

    Attributes:
        detection (Detection): The detected blood bar.
        result (RecognitionResult): Final name and confidence.
        leading (bool): Whether this is the leading hero.
        parts (Tuple[RecognitionResult, ...]): Per-ROI results of the leading hero.
        skill_region (Optional[Rect]): Skill region, frame coordinates.
        first_skill (Optional[Rect]): First-skill crop, frame coordinates.
    """

    detection: Detection
    result: RecognitionResult
    leading: bool = False
    parts: Tuple[RecognitionResult, ...] = ()
    skill_region: Optional[Rect] = None
    first_skill: Optional[Rect] = None


def _recognize_leading(
    frame: RasterImage,
    det: Detection,
    classifiers: ClassifierSet,
    params: RecognitionParams,
) -> HeroRecognition:
    appearance, _ = crop(frame, det.appearance)
    app_pred = run_classifier(classifiers.appearance, appearance)
    parts = [top_label(app_pred, 0.0, "appearance")]

    region_rect = skill_region_rect((frame.width, frame.height))
    region, region_rect = crop(frame, region_rect)
    region_pred = None
    if classifiers.skill_region is not None:
        region_pred = run_classifier(classifiers.skill_region, region)
        parts.append(top_label(region_pred, 0.0, "skill_region"))

    first_pred, first_rect = None, None
    if classifiers.first_skill is not None:
        local, _ = find_first_skill(region, params.r_min, params.r_max, params.first_skill_size)
        if local is None:
            logger.debug("no skill circle found, fusing without the first skill")
        else:
            first_rect = local.shift(region_rect.x, region_rect.y)
            first_crop, _ = crop(region, local)
            first_pred = run_classifier(classifiers.first_skill, first_crop)
            parts.append(top_label(first_pred, 0.0, "first_skill"))

    result = fuse_leading(app_pred, region_pred, first_pred, params.fuse_threshold)
    return HeroRecognition(
        detection=det,
        result=result,
        leading=True,
        parts=tuple(parts),
        skill_region=region_rect,
        first_skill=first_rect,
    )


def recognize_frame(
    frame: RasterImage,
    detections: Sequence[Detection],
    classifiers: ClassifierSet,
    params: RecognitionParams = RecognitionParams(),
) -> List[HeroRecognition]:
    """Name every detected hero of a normalized frame.

    The leading hero is the highest-scoring self-camp detection; its
    appearance, skill-region and first-skill crops are classified and fused.
    Every other hero is named from its appearance crop alone, `"unknown"`
    when the top confidence is under `params.appearance_threshold`.

    Args:
        frame (RasterImage): Height-normalized RGB frame.
        detections (Sequence[Detection]): Detections of the frame, by descending score.
        classifiers (ClassifierSet): Classifiers to use.
        params (RecognitionParams, optional): Thresholds.

    Returns:
        List[HeroRecognition]: One entry per detection, in detection order.
    """
    leading = next((d for d in detections if d.camp is Camp.SELF), None)
    out = []
    for det in detections:
        if det is leading:
            out.append(_recognize_leading(frame, det, classifiers, params))
            continue
        appearance, _ = crop(frame, det.appearance)
        pred = run_classifier(classifiers.appearance, appearance)
        out.append(
            HeroRecognition(
                detection=det,
                result=top_label(pred, params.appearance_threshold, "appearance"),
            )
        )
    return out
