from .core import make_partial_pipe, make_pipe
from .detection import detect_frame
from .geometry import detect_circles, find_first_skill
from .image import crop, maximum_filter, normalize_height, resize, to_grayscale
from .matching import extract_peaks, find_local_maxima, masked_match, rank_and_score
from .nms import suppress
from .recognition import accumulate_video, train_reference


to_grayscale = make_pipe(to_grayscale, name="to_grayscale")
normalize_height = make_partial_pipe(normalize_height, name="normalize_height")
resize = make_partial_pipe(resize, name="resize")
crop = make_partial_pipe(crop, name="crop")
maximum_filter = make_partial_pipe(maximum_filter, name="maximum_filter")
masked_match = make_partial_pipe(masked_match, name="masked_match")
find_local_maxima = make_partial_pipe(find_local_maxima, name="find_local_maxima")
rank_and_score = make_partial_pipe(rank_and_score, name="rank_and_score")
extract_peaks = make_partial_pipe(extract_peaks, name="extract_peaks")
suppress = make_partial_pipe(suppress, name="suppress")
detect_frame = make_partial_pipe(detect_frame, name="detect_frame")
detect_circles = make_partial_pipe(detect_circles, name="detect_circles")
find_first_skill = make_partial_pipe(find_first_skill, name="find_first_skill")
train_reference = make_partial_pipe(train_reference, name="train_reference")
accumulate_video = make_pipe(accumulate_video, name="accumulate_video")


__all__ = [
    "accumulate_video",
    "crop",
    "detect_circles",
    "detect_frame",
    "extract_peaks",
    "find_first_skill",
    "find_local_maxima",
    "masked_match",
    "maximum_filter",
    "normalize_height",
    "rank_and_score",
    "resize",
    "suppress",
    "to_grayscale",
    "train_reference",
]
