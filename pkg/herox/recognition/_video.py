import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import equinox as eqx

from ..camp import Camp
from ..core import StateFunc
from ._frame import HeroRecognition


logger = logging.getLogger(__name__)

CAMPS = (Camp.SELF, Camp.FRIEND, Camp.ENEMY)
TEAM_LIMITS = {Camp.SELF: 1, Camp.FRIEND: 4, Camp.ENEMY: 5}


class HeroTally(eqx.Module):
    """Accumulated evidence for one hero name in one camp.

    Attributes:
        name (str): Hero name.
        confidence (float): Sum of per-frame confidences.
        frames (int): Number of frames the name was seen in.
    """

    name: str
    confidence: float
    frames: int


def _sort_key(item):
    (name, (total, frames)) = item
    return (-total, name)


class VideoSummary(StateFunc):
    """Per-camp hero tallies over any number of frames.

    Summaries merge associatively and commutatively: confidence sums are
    kept as exact fractions, so every partition and ordering of the frames
    gives an identical summary.
    """

    tallies: Dict[Camp, Dict[str, Tuple[Fraction, int]]]
    frames: int

    def __init__(
        self,
        tallies: Optional[Mapping[Camp, Mapping[str, Tuple[Fraction, int]]]] = None,
        frames: int = 0,
    ):
        super().__init__(name="VideoSummary")
        tallies = tallies or {}
        self.tallies = {c: dict(tallies.get(c, {})) for c in CAMPS}
        self.frames = int(frames)

    @classmethod
    def of_frame(cls, recognitions: Sequence[HeroRecognition]) -> "VideoSummary":
        """Summary of one frame; unknown names and unknown camps are skipped.

        A name seen twice in one camp of the same frame adds both
        confidences but counts one frame.
        """
        tallies = {c: {} for c in CAMPS}
        for rec in recognitions:
            camp = rec.detection.camp
            if camp not in tallies or not rec.result.known:
                continue
            total, _ = tallies[camp].get(rec.result.label, (Fraction(0), 1))
            tallies[camp][rec.result.label] = (total + Fraction(rec.result.confidence), 1)
        return cls(tallies, frames=1)

    def merge(self, other: "VideoSummary") -> "VideoSummary":
        tallies = {}
        for camp in CAMPS:
            merged = dict(self.tallies[camp])
            for name, (total, frames) in other.tallies[camp].items():
                t0, f0 = merged.get(name, (Fraction(0), 0))
                merged[name] = (t0 + total, f0 + frames)
            tallies[camp] = merged
        return VideoSummary(tallies, self.frames + other.frames)

    def __add__(self, other: "VideoSummary") -> "VideoSummary":
        return self.merge(other)

    def heroes(self, camp: Camp) -> List[HeroTally]:
        """Tallies of `camp`, by descending confidence then name."""
        return [
            HeroTally(name=name, confidence=float(total), frames=frames)
            for name, (total, frames) in sorted(self.tallies[camp].items(), key=_sort_key)
        ]

    def _predict(self, camp: Camp) -> List[HeroTally]:
        return self.heroes(camp)

    def _summary(self):
        return self.to_json()

    def to_json(self) -> dict:
        return {
            "frames": self.frames,
            **{
                camp.value: [
                    {"name": t.name, "confidence": t.confidence, "frames": t.frames}
                    for t in self.heroes(camp)
                ]
                for camp in CAMPS
            },
        }

    def __eq__(self, other):
        if not isinstance(other, VideoSummary):
            return NotImplemented
        return self.frames == other.frames and self.tallies == other.tallies

    def __repr__(self):
        counts = ", ".join(f"{c.value}={len(self.tallies[c])}" for c in CAMPS)
        return f"VideoSummary(frames={self.frames}, {counts})"


def accumulate_video(frames: Iterable[Sequence[HeroRecognition]]) -> VideoSummary:
    """Fold per-frame recognitions into a video summary.

    Args:
        frames (Iterable[Sequence[HeroRecognition]]): Recognitions of each
            sampled frame, in any order.

    Returns:
        VideoSummary: The accumulated summary.
    """
    summary = VideoSummary()
    for recognitions in frames:
        summary = summary.merge(VideoSummary.of_frame(recognitions))
    logger.debug("accumulated %s", summary)
    return summary


def select_heroes(
    summary: VideoSummary, limits: Optional[Mapping[Camp, int]] = None
) -> Dict[Camp, List[str]]:
    """Most confident names per camp, at most one self, four friends and five enemies.

    A name kept for an earlier camp (self, then friend, then enemy) is not
    repeated in a later one.
    """
    limits = TEAM_LIMITS if limits is None else limits
    taken = set()
    out = {}
    for camp in CAMPS:
        picked = []
        for tally in summary.heroes(camp):
            if len(picked) >= limits.get(camp, 0):
                break
            if tally.name in taken:
                continue
            picked.append(tally.name)
            taken.add(tally.name)
        out[camp] = picked
    return out
