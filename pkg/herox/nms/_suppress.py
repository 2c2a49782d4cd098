from typing import List, Sequence

import equinox as eqx

from ..matching import BloodBarTemplate, PeakCandidate


class NmsParams(eqx.Module):
    """Suppression thresholds.

    Attributes:
        t_x (int): Horizontal offset below which a weaker peak is suppressed.
        t_y (int): Vertical offset below which a weaker peak is suppressed.
    """

    t_x: int
    t_y: int = 1

    def __check_init__(self):
        if self.t_x < 0 or self.t_y < 0:
            raise ValueError(f"NMS thresholds must be >= 0, got t_x={self.t_x}, t_y={self.t_y}")

    @classmethod
    def for_template(cls, template: BloodBarTemplate, t_y: int = 1) -> "NmsParams":
        """Half the template width horizontally, one pixel vertically."""
        return cls(t_x=template.width // 2, t_y=t_y)


def suppress(candidates: Sequence[PeakCandidate], params: NmsParams) -> List[PeakCandidate]:
    """Drop peaks lying too close to a stronger surviving peak.

    Candidate `i` is cleared when some earlier, still-real candidate `j < i`
    has `|y_j - y_i| < t_y` and `|x_j - x_i| < t_x`. Comparisons are strict.

    Args:
        candidates (Sequence[PeakCandidate]): Peaks sorted by descending score.
        params (NmsParams): Thresholds.

    Returns:
        List[PeakCandidate]: The surviving peaks, in input order.

    Raises:
        ValueError: If the input is not sorted by descending score.
    """
    for a, b in zip(candidates, candidates[1:]):
        if b.score > a.score:
            raise ValueError("suppress() needs candidates sorted by descending score")
    real = [True] * len(candidates)
    for i in range(1, len(candidates)):
        p_i = candidates[i]
        for j in range(i):
            p_j = candidates[j]
            if real[j] and abs(p_j.y - p_i.y) < params.t_y and abs(p_j.x - p_i.x) < params.t_x:
                real[i] = False
                break
    return [
        eqx.tree_at(lambda c: c.is_real_detection, c, True)
        for c, keep in zip(candidates, real)
        if keep
    ]
