import logging
import time
from typing import Sequence, Tuple

import equinox as eqx
import numpy as np
import pandas as pd

from ..image import RasterImage
from ._base import HeroClassifier
from ._frame import run_classifier
from ._fusion import top_label


logger = logging.getLogger(__name__)


class ClassifierReport(eqx.Module):
    """Accuracy and speed of a classifier on labelled crops.

    Attributes:
        n (int): Number of samples.
        accuracy (float): Fraction of correct top-1 labels.
        macro_f1 (float): Unweighted mean of per-label F1.
        micro_f1 (float): F1 over all decisions pooled.
        mean_ms (float): Mean wall time per call in milliseconds.
    """

    n: int
    accuracy: float
    macro_f1: float
    micro_f1: float
    mean_ms: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "micro_f1": self.micro_f1,
            "mean_ms": self.mean_ms,
        }


def f1_scores(truth: Sequence[str], predicted: Sequence[str]) -> Tuple[float, float]:
    """Macro and micro F1 of single-label predictions.

    Labels are the union of true and predicted labels; a label with no
    true or predicted sample has F1 0.

    Example:
        >>> f1_scores(["a", "a", "b"], ["a", "b", "b"])
        (0.6666666666666666, 0.6666666666666666)
    """
    frame = pd.DataFrame({"truth": list(truth), "pred": list(predicted)})
    labels = sorted(set(frame.truth) | set(frame.pred))
    hit = frame.truth == frame.pred
    per_label = []
    for label in labels:
        tp = int((hit & (frame.truth == label)).sum())
        fp = int(((frame.pred == label) & ~hit).sum())
        fn = int(((frame.truth == label) & ~hit).sum())
        denom = 2 * tp + fp + fn
        per_label.append(2 * tp / denom if denom else 0.0)
    tp = int(hit.sum())
    # single-label: every miss is one false positive and one false negative
    micro = tp / len(frame) if len(frame) else 0.0
    return float(np.mean(per_label)) if per_label else 0.0, float(micro)


def evaluate_classifier(
    classifier: HeroClassifier, samples: Sequence[Tuple[RasterImage, str]]
) -> ClassifierReport:
    """Run `classifier` over labelled crops and report accuracy, F1 and speed.

    Raises:
        ValueError: If `samples` is empty.
    """
    if len(samples) == 0:
        raise ValueError("evaluate_classifier needs at least one sample")
    truth, predicted, times = [], [], []
    for image, label in samples:
        start = time.perf_counter()
        pred = run_classifier(classifier, image)
        times.append((time.perf_counter() - start) * 1e3)
        truth.append(str(label))
        predicted.append(top_label(pred).label)
    macro, micro = f1_scores(truth, predicted)
    accuracy = float(np.mean([t == p for t, p in zip(truth, predicted)]))
    logger.info("evaluated %d samples: accuracy %.3f", len(samples), accuracy)
    return ClassifierReport(
        n=len(samples),
        accuracy=accuracy,
        macro_f1=macro,
        micro_f1=micro,
        mean_ms=float(np.mean(times)),
    )
