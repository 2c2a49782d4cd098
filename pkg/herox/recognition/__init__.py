from ._base import (
    ClassifierError,
    HeroClassifier,
    normalize_prediction,
    Prediction,
    RoiType,
    UNKNOWN_LABEL,
)
from ._bridge import SubprocessClassifier
from ._frame import (
    ClassifierSet,
    HeroRecognition,
    recognize_frame,
    RecognitionParams,
    run_classifier,
)
from ._fusion import fuse_leading, RecognitionResult, top_label
from ._metrics import ClassifierReport, evaluate_classifier, f1_scores
from ._reference import (
    batch_features,
    load_reference,
    reference_features,
    ReferenceClassifier,
    save_reference,
    train_reference,
)
from ._video import (
    accumulate_video,
    HeroTally,
    select_heroes,
    TEAM_LIMITS,
    VideoSummary,
)


__all__ = [
    "accumulate_video",
    "batch_features",
    "ClassifierError",
    "ClassifierReport",
    "ClassifierSet",
    "evaluate_classifier",
    "f1_scores",
    "fuse_leading",
    "HeroClassifier",
    "HeroRecognition",
    "HeroTally",
    "load_reference",
    "normalize_prediction",
    "Prediction",
    "recognize_frame",
    "RecognitionParams",
    "RecognitionResult",
    "reference_features",
    "ReferenceClassifier",
    "RoiType",
    "run_classifier",
    "save_reference",
    "select_heroes",
    "SubprocessClassifier",
    "TEAM_LIMITS",
    "train_reference",
    "UNKNOWN_LABEL",
    "VideoSummary",
]
