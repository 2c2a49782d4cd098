from ._samples import (
    CenterWindow,
    extract_leading_samples,
    frame_samples,
    load_samples,
    SAMPLES_MANIFEST,
    SampleRecord,
)
from ._split import split_corpus


__all__ = [
    "CenterWindow",
    "extract_leading_samples",
    "frame_samples",
    "load_samples",
    "SAMPLES_MANIFEST",
    "SampleRecord",
    "split_corpus",
]
