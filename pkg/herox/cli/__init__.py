from ._bench import bench_corpus, calibrate_corpus, match_frame
from ._commands import frame_files, load_classifiers, ordered_map, parse_dims
from ._main import build_parser, main
from ._overlay import draw_overlay


__all__ = [
    "bench_corpus",
    "build_parser",
    "calibrate_corpus",
    "draw_overlay",
    "frame_files",
    "load_classifiers",
    "main",
    "match_frame",
    "ordered_map",
    "parse_dims",
]
