from .base import Functional, predict, StateFunc, summary
from .pipe import make_partial_pipe, make_pipe, Pipe, Pipeable


__all__ = [
    "Functional",
    "make_partial_pipe",
    "make_pipe",
    "Pipe",
    "Pipeable",
    "predict",
    "StateFunc",
    "summary",
]
