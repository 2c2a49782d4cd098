from typing import List, Sequence, Tuple

import equinox as eqx
import numpy as np

from ..image import MatchMap, maximum_filter


class PeakCandidate(eqx.Module):
    """A local maximum of the match map.

    Attributes:
        x (int): Left edge of the template placement in the normalized frame.
        y (int): Top edge of the template placement.
        value (float): Raw match degree at the placement.
        score (float): Contrast-weighted score, 0 until scored.
        is_real_detection (bool): Cleared by non-maximum suppression.
    """

    x: int
    y: int
    value: float
    score: float = 0.0
    is_real_detection: bool = True


class ScoreParams(eqx.Module):
    """Peak scoring parameters.

    Attributes:
        alpha (float): Weight of the peak value.
        beta (float): Weight of the mean contrast against the window.
        radius (int): Maximum-filter radius in pixels.
        top_k (int): Number of peaks kept after ranking by raw value.
        score_threshold (float): Minimum score of a detection.
    """

    alpha: float = 1.0
    beta: float = 4.0
    radius: int = 12
    top_k: int = 20
    score_threshold: float = 2.5

    def __check_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.alpha + self.beta <= 0:
            raise ValueError(
                f"need alpha >= 0, beta >= 0, alpha + beta > 0; got {self.alpha}, {self.beta}"
            )
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.radius < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")


def _local_maxima_arrays(match_map: MatchMap, radius: int):
    values = match_map.values
    peaks = np.asarray(maximum_filter(match_map, radius).values == values)
    ys, xs = np.nonzero(peaks)
    return ys, xs, np.asarray(values)[ys, xs]


def find_local_maxima(match_map: MatchMap, radius: int) -> List[PeakCandidate]:
    """Positions where the map equals its maximum-filtered self.

    Ties inside a window all qualify. Candidates come out in row-major order
    and carry only their raw value.

    Args:
        match_map (MatchMap): Match map.
        radius (int): Maximum-filter radius.

    Returns:
        List[PeakCandidate]: Every local maximum.
    """
    ys, xs, vals = _local_maxima_arrays(match_map, radius)
    return [
        PeakCandidate(x=int(x), y=int(y), value=float(v))
        for y, x, v in zip(ys, xs, vals)
    ]


def score_window(window, center_value: float, alpha: float, beta: float) -> float:
    """Score one peak from its filter window.

    `score = alpha * v0 + beta * mean(v0 - v_i)`, the mean taken over the
    window pixels other than the peak itself.

    Args:
        window (ArrayLike): Values of the (border-clipped) window, peak included.
        center_value (float): The peak value `v0`.
        alpha (float): Weight of `v0`.
        beta (float): Weight of the contrast term.

    Returns:
        float: The score.
    """
    window = np.asarray(window, dtype=np.float64)
    v0 = float(center_value)
    n = window.size - 1
    if n <= 0:
        return alpha * v0
    # the peak's own term is v0 - v0 = 0
    contrast = float(np.sum(v0 - window)) / n
    return alpha * v0 + beta * contrast


def _rank(values, ys, xs, vals, params: ScoreParams) -> List[PeakCandidate]:
    order = np.argsort(-vals, kind="stable")[: params.top_k]
    r = params.radius
    h, w = values.shape
    scored = []
    for i in order:
        y, x, v0 = int(ys[i]), int(xs[i]), float(vals[i])
        window = values[max(y - r, 0) : min(y + r + 1, h), max(x - r, 0) : min(x + r + 1, w)]
        scored.append(
            PeakCandidate(
                x=x, y=y, value=v0, score=score_window(window, v0, params.alpha, params.beta)
            )
        )
    scores = np.array([c.score for c in scored])
    return [scored[i] for i in np.argsort(-scores, kind="stable")]


def _as_arrays(candidates: Sequence[PeakCandidate]) -> Tuple[np.ndarray, ...]:
    ys = np.array([c.y for c in candidates], dtype=np.int64)
    xs = np.array([c.x for c in candidates], dtype=np.int64)
    vals = np.array([c.value for c in candidates], dtype=np.float64)
    return ys, xs, vals


def rank_and_score(
    match_map: MatchMap, candidates: Sequence[PeakCandidate], params: ScoreParams
) -> List[PeakCandidate]:
    """Keep the `top_k` strongest peaks and score them.

    Peaks are ranked by raw value (ties in input order, row-major for
    `find_local_maxima` output), truncated to `params.top_k`, scored with
    `score_window` over their maximum-filter window, and returned by
    descending score.

    Args:
        match_map (MatchMap): The map the candidates came from.
        candidates (Sequence[PeakCandidate]): Local maxima.
        params (ScoreParams): Scoring parameters.

    Returns:
        List[PeakCandidate]: At most `top_k` scored candidates.
    """
    if len(candidates) == 0:
        return []
    ys, xs, vals = _as_arrays(candidates)
    return _rank(match_map.numpy(), ys, xs, vals, params)


def threshold_candidates(
    candidates: Sequence[PeakCandidate], params: ScoreParams
) -> List[PeakCandidate]:
    """Candidates whose score reaches `params.score_threshold`, order kept."""
    return [c for c in candidates if c.score >= params.score_threshold]


def extract_peaks(match_map: MatchMap, params: ScoreParams) -> List[PeakCandidate]:
    """Local maxima, ranking, scoring and thresholding in one pass.

    Equivalent to `threshold_candidates(rank_and_score(m, find_local_maxima(m, r), p), p)`
    without materialising every local maximum.
    """
    ys, xs, vals = _local_maxima_arrays(match_map, params.radius)
    if len(vals) == 0:
        return []
    values = match_map.numpy()
    return threshold_candidates(_rank(values, ys, xs, vals, params), params)
