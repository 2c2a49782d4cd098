from ._camp import Camp, CampVerdict, classify_camp, leftmost_mean_color, sampling_strip


__all__ = [
    "Camp",
    "CampVerdict",
    "classify_camp",
    "leftmost_mean_color",
    "sampling_strip",
]
