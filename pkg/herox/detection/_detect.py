import logging
import time
from functools import partial
from typing import Dict, List, Sequence, Tuple

import equinox as eqx
import numpy as np

from ..camp import Camp, classify_camp, leftmost_mean_color
from ..core import Functional, make_pipe, Pipe
from ..geometry import appearance_rect, APPEARANCE_SIZE
from ..image import normalize_height, NormalizedFrame, RasterImage, Rect, to_grayscale
from ..matching import (
    blood_bar_template,
    BloodBarTemplate,
    extract_peaks,
    masked_match,
    PeakCandidate,
    ScoreParams,
)
from ..nms import NmsParams, suppress


logger = logging.getLogger(__name__)


class Detection(eqx.Module):
    """A blood bar that survived matching, suppression and camp filtering.

    Attributes:
        bbox (Rect): Bar box in normalized-frame coordinates.
        camp (Camp): Camp read from the bar color.
        score (float): Peak score.
        value (float): Raw match degree.
        appearance (Rect): Hero crop under the bar, normalized coordinates.
        color (Tuple[float, float, float]): Left-most mean color of the bar.
    """

    bbox: Rect
    camp: Camp
    score: float
    value: float
    appearance: Rect
    color: Tuple[float, float, float]

    def to_source(self, scale: float) -> Rect:
        """Bar box in source-image coordinates for a frame normalized by `scale`."""
        return self.bbox if scale == 1.0 else self.bbox.scale(1.0 / scale)


class FrameDetections(eqx.Module):
    """Detections of one frame together with its normalized image."""

    frame: NormalizedFrame
    detections: Tuple[Detection, ...]
    rejected: Tuple[PeakCandidate, ...] = ()

    @property
    def leading(self):
        """The strongest self-camp detection, or None."""
        for d in self.detections:
            if d.camp is Camp.SELF:
                return d
        return None

    def by_camp(self, camp: Camp) -> List[Detection]:
        return [d for d in self.detections if d.camp is camp]


class Detector(eqx.Module):
    """Blood-bar detector: template, parameters and the matching pipe.

    Attributes:
        template (BloodBarTemplate): Bar template and mask.
        score (ScoreParams): Peak scoring parameters.
        nms (NmsParams): Suppression thresholds.
        height (int): Normalized frame height.
        strip_width (int): Width of the camp color strip.
        strip_inset (int): Rows skipped at the top and bottom of the strip.
        appearance_size (int): Side of the appearance crop.
        appearance_offset (int): Gap between bar and appearance crop.
    """

    template: BloodBarTemplate
    score: ScoreParams
    nms: NmsParams
    height: int = 720
    strip_width: int = 4
    strip_inset: int = 1
    appearance_size: int = APPEARANCE_SIZE
    appearance_offset: int = 8

    @classmethod
    def default(cls, template: BloodBarTemplate = None, **kwargs) -> "Detector":
        template = blood_bar_template() if template is None else template
        score = kwargs.pop("score", ScoreParams())
        nms = kwargs.pop("nms", NmsParams.for_template(template))
        return cls(template=template, score=score, nms=nms, **kwargs)

    def matching_pipe(self) -> Pipe:
        """grayscale >> match >> peaks >> nms, on a normalized RGB frame."""
        return (
            make_pipe(to_grayscale, name="grayscale")
            >> Functional(fn=partial(masked_match, template=self.template), name="match")
            >> Functional(fn=partial(extract_peaks, params=self.score), name="peaks")
            >> Functional(fn=partial(suppress, params=self.nms), name="nms")
        )

    def classify(
        self, frame: RasterImage, peaks: Sequence[PeakCandidate]
    ) -> Tuple[List[Detection], List[PeakCandidate]]:
        """Camp-classify suppressed peaks; rejected peaks are returned apart."""
        kept, rejected = [], []
        dims = (frame.width, frame.height)
        for p in peaks:
            color = leftmost_mean_color(
                frame, p, self.template, self.strip_width, self.strip_inset
            )
            verdict = classify_camp(*color)
            if verdict.rejected:
                rejected.append(p)
                continue
            bbox = Rect(p.x, p.y, self.template.width, self.template.height)
            kept.append(
                Detection(
                    bbox=bbox,
                    camp=verdict.camp,
                    score=p.score,
                    value=p.value,
                    appearance=appearance_rect(
                        bbox, dims, self.appearance_size, self.appearance_offset
                    ),
                    color=color,
                )
            )
        return kept, rejected

    def timed(self, img: RasterImage) -> Tuple[FrameDetections, Dict[str, float]]:
        """Detect and report per-stage wall time in milliseconds."""
        start = time.perf_counter()
        frame = normalize_height(img, self.height)
        timings = {"normalize": (time.perf_counter() - start) * 1e3}
        if frame.image.width < self.template.width:
            return FrameDetections(frame=frame, detections=()), timings
        rgb = _as_rgb(frame.image)
        peaks, stage_times = self.matching_pipe().timed(rgb)
        timings.update(stage_times)
        start = time.perf_counter()
        kept, rejected = self.classify(rgb, peaks)
        timings["camp"] = (time.perf_counter() - start) * 1e3
        logger.debug(
            "%d peaks, %d detections, %d rejected", len(peaks), len(kept), len(rejected)
        )
        return (
            FrameDetections(frame=frame, detections=tuple(kept), rejected=tuple(rejected)),
            timings,
        )

    def __call__(self, img: RasterImage) -> FrameDetections:
        return self.timed(img)[0]


def _as_rgb(img: RasterImage) -> RasterImage:
    if img.channels == 3:
        return img
    return RasterImage(np.repeat(img.numpy(), 3, axis=2))


def detect_frame(img: RasterImage, detector: Detector = None) -> FrameDetections:
    """Detect every hero blood bar in a frame.

    Normalizes the frame height, matches the template on the gray frame,
    scores and thresholds the match peaks, suppresses duplicates, and
    classifies the camp of each surviving bar. False detections found by
    the camp rules are dropped.

    Args:
        img (RasterImage): Source frame, RGB (gray frames are replicated).
        detector (Detector, optional): Detector; defaults to the built-in template
            and default parameters.

    Returns:
        FrameDetections: Detections sorted by descending score.
    """
    detector = Detector.default() if detector is None else detector
    return detector(img)


def calibrate_threshold(true_scores: Sequence[float], false_scores: Sequence[float]) -> float:
    """Score threshold that best separates true bars from false peaks.

    The threshold minimises misclassified peaks (true below, false at or
    above); among equally good thresholds the middle of the widest gap wins.

    Raises:
        ValueError: If there are no true scores.
    """
    true_scores = np.sort(np.asarray(true_scores, dtype=np.float64))
    false_scores = np.sort(np.asarray(false_scores, dtype=np.float64))
    if true_scores.size == 0:
        raise ValueError("calibration needs at least one true detection")
    if false_scores.size == 0:
        # halfway to zero below the weakest true bar
        return float(true_scores[0]) / 2.0
    pool = np.unique(np.concatenate([true_scores, false_scores]))
    cuts = np.concatenate([[pool[0] - 1.0], (pool[1:] + pool[:-1]) / 2.0, [pool[-1] + 1.0]])
    gaps = np.concatenate([[1.0], pool[1:] - pool[:-1], [1.0]])
    errors = np.array(
        [
            np.searchsorted(true_scores, t, side="left")
            + false_scores.size
            - np.searchsorted(false_scores, t, side="left")
            for t in cuts
        ]
    )
    best = np.flatnonzero(errors == errors.min())
    return float(cuts[best[np.argmax(gaps[best])]])
