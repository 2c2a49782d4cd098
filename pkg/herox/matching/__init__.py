from ._ncc import masked_match
from ._peaks import (
    extract_peaks,
    find_local_maxima,
    PeakCandidate,
    rank_and_score,
    score_window,
    ScoreParams,
    threshold_candidates,
)
from ._template import (
    blood_bar_template,
    BloodBarTemplate,
    DIGIT_BOX,
    EMPTY_LEVEL,
    FILL_BOX,
    load_template,
    MASK_FILE,
    save_template,
    TEMPLATE_FILE,
    TEMPLATE_HEIGHT,
    TEMPLATE_WIDTH,
)


__all__ = [
    "blood_bar_template",
    "BloodBarTemplate",
    "DIGIT_BOX",
    "EMPTY_LEVEL",
    "extract_peaks",
    "FILL_BOX",
    "find_local_maxima",
    "load_template",
    "MASK_FILE",
    "masked_match",
    "PeakCandidate",
    "rank_and_score",
    "save_template",
    "score_window",
    "ScoreParams",
    "TEMPLATE_FILE",
    "TEMPLATE_HEIGHT",
    "TEMPLATE_WIDTH",
    "threshold_candidates",
]
