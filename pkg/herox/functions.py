from .camp import classify_camp, leftmost_mean_color, sampling_strip
from .core import predict, summary
from .dataset import extract_leading_samples, split_corpus
from .detection import calibrate_threshold, detect_frame
from .geometry import (
    appearance_rect,
    detect_circles,
    find_first_skill,
    first_skill_rect,
    skill_region_rect,
)
from .image import crop, maximum_filter, normalize_height, read_png, resize, to_grayscale, write_png
from .matching import (
    blood_bar_template,
    extract_peaks,
    find_local_maxima,
    load_template,
    masked_match,
    rank_and_score,
    save_template,
    score_window,
    threshold_candidates,
)
from .nms import suppress
from .recognition import (
    accumulate_video,
    evaluate_classifier,
    fuse_leading,
    load_reference,
    recognize_frame,
    save_reference,
    select_heroes,
    train_reference,
)
from .synth import load_manifest, render, render_corpus, render_shop_scene, render_sprite_crop


__all__ = [
    "accumulate_video",
    "appearance_rect",
    "blood_bar_template",
    "calibrate_threshold",
    "classify_camp",
    "crop",
    "detect_circles",
    "detect_frame",
    "evaluate_classifier",
    "extract_leading_samples",
    "extract_peaks",
    "find_first_skill",
    "find_local_maxima",
    "first_skill_rect",
    "fuse_leading",
    "leftmost_mean_color",
    "load_manifest",
    "load_reference",
    "load_template",
    "masked_match",
    "maximum_filter",
    "normalize_height",
    "predict",
    "rank_and_score",
    "read_png",
    "recognize_frame",
    "render",
    "render_corpus",
    "render_shop_scene",
    "render_sprite_crop",
    "resize",
    "sampling_strip",
    "save_reference",
    "save_template",
    "score_window",
    "select_heroes",
    "skill_region_rect",
    "split_corpus",
    "summary",
    "suppress",
    "threshold_candidates",
    "to_grayscale",
    "train_reference",
    "write_png",
]
