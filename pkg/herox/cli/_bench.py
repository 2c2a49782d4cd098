import logging
import math
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..camp import Camp
from ..detection import calibrate_threshold, Detection, Detector
from ..image import read_png, Rect
from ..matching import ScoreParams
from ..synth import load_manifest, ManifestError


logger = logging.getLogger(__name__)

MATCH_DISTANCE = 5.0


def _center_distance(a: Rect, b: Rect) -> float:
    (ax, ay), (bx, by) = a.center, b.center
    return math.hypot(ax - bx, ay - by)


def match_frame(
    detections: Sequence[Tuple[Rect, Camp]],
    truth: Sequence[Tuple[Rect, Optional[Camp]]],
    max_distance: float = MATCH_DISTANCE,
) -> Tuple[int, int, int, List[float]]:
    """Greedy match of detections (strongest first) to ground-truth bars.

    A detection matches the nearest free truth bar whose center lies within
    `max_distance` pixels and whose expected camp equals the detected camp.
    Truth bars whose camp is undecidable (`None`) absorb detections at their
    position without counting either way.

    Returns:
        Tuple[int, int, int, List[float]]: True positives, false positives,
        false negatives, and the center errors of the true positives.
    """
    free = [i for i, (_, camp) in enumerate(truth) if camp is not None]
    ignored = [rect for rect, camp in truth if camp is None]
    tp, fp, errors = 0, 0, []
    for rect, camp in detections:
        best, best_d = None, max_distance
        for i in free:
            d = _center_distance(rect, truth[i][0])
            if d <= best_d and truth[i][1] is camp:
                best, best_d = i, d
        if best is not None:
            free.remove(best)
            tp += 1
            errors.append(best_d)
        elif not any(_center_distance(rect, r) <= max_distance for r in ignored):
            fp += 1
    return tp, fp, len(free), errors


def _truth(entry) -> List[Tuple[Rect, Optional[Camp]]]:
    out = []
    for bar in entry["bars"]:
        camp = bar.get("expected_camp", bar["camp"])
        out.append((Rect(*bar["rect"]), None if camp is None else Camp(camp)))
    return out


def _frames(corpus_dir: Path):
    manifest = load_manifest(corpus_dir)
    frames = manifest["frames"]
    if len(frames) == 0:
        raise ManifestError(f"{corpus_dir}: corpus has no frames")
    return frames


def bench_corpus(corpus_dir, detector: Detector) -> Dict:
    """Precision, recall and latency of `detector` on a rendered corpus.

    Frames run one at a time so the latency figures are single-threaded.

    Raises:
        ManifestError: If the manifest is missing, corrupt or empty.
    """
    corpus_dir = Path(corpus_dir)
    rows, stages = [], []
    tp = fp = fn = 0
    errors: List[float] = []
    for entry in _frames(corpus_dir):
        image = read_png(corpus_dir / entry["file"])
        start = time.perf_counter()
        found, timings = detector.timed(image)
        elapsed = (time.perf_counter() - start) * 1e3
        dets = [(d.to_source(found.frame.scale), d.camp) for d in found.detections]
        t, f, n, e = match_frame(dets, _truth(entry))
        tp, fp, fn = tp + t, fp + f, fn + n
        errors += e
        rows.append({"frame": entry["file"], "ms": elapsed, "tp": t, "fp": f, "fn": n})
        stages.append(timings)
        if f or n:
            logger.info("%s: %d false positives, %d misses", entry["file"], f, n)

    per_frame = pd.DataFrame(rows)
    latency = per_frame["ms"]
    return {
        "schema": 1,
        "frames": len(per_frame),
        "tp": tp,
        "fp": fp,
        "fn": fn,
        "precision": tp / (tp + fp) if tp + fp else 1.0,
        "recall": tp / (tp + fn) if tp + fn else 1.0,
        "center_error": {
            "mean": float(np.mean(errors)) if errors else 0.0,
            "max": float(np.max(errors)) if errors else 0.0,
        },
        "latency_ms": {
            "mean": float(latency.mean()),
            "p50": float(latency.quantile(0.5)),
            "p90": float(latency.quantile(0.9)),
            "p99": float(latency.quantile(0.99)),
            "max": float(latency.max()),
        },
        "stages_ms": {k: float(v) for k, v in pd.DataFrame(stages).mean().items()},
    }


def calibrate_corpus(corpus_dir, detector: Detector) -> Dict:
    """Score threshold separating true bars from other suppressed peaks.

    Every frame is matched without a score threshold; camp-classified peaks
    that land on a truth bar are true scores, all others false scores.
    """
    corpus_dir = Path(corpus_dir)
    score = detector.score
    open_params = ScoreParams(
        alpha=score.alpha,
        beta=score.beta,
        radius=score.radius,
        top_k=score.top_k,
        score_threshold=-math.inf,
    )
    pipe = Detector(
        template=detector.template,
        score=open_params,
        nms=detector.nms,
        height=detector.height,
        strip_width=detector.strip_width,
        strip_inset=detector.strip_inset,
    )
    true_scores, false_scores = [], []
    for entry in _frames(corpus_dir):
        image = read_png(corpus_dir / entry["file"])
        found = pipe(image)
        truth = [rect for rect, _ in _truth(entry)]
        candidates: List[Detection] = list(found.detections)
        scale = found.frame.scale
        for det in candidates:
            rect = det.to_source(scale)
            if any(_center_distance(rect, t) <= MATCH_DISTANCE for t in truth):
                true_scores.append(det.score)
            else:
                false_scores.append(det.score)
    threshold = calibrate_threshold(true_scores, false_scores)
    return {
        "schema": 1,
        "threshold": threshold,
        "true": len(true_scores),
        "false": len(false_scores),
        "min_true": float(min(true_scores)) if true_scores else None,
        "max_false": float(max(false_scores)) if false_scores else None,
    }
