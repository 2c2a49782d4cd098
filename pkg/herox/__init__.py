"""Herox: hero blood-bar detection and recognition in JAX"""

from herox import (
    camp,
    cli,
    config,
    core,
    dataset,
    detection,
    functions,
    geometry,
    image,
    matching,
    nms,
    pipe_functions,
    recognition,
    synth,
)
from herox.core import (
    Functional,
    make_partial_pipe,
    make_pipe,
    Pipe,
    Pipeable,
    StateFunc,
)


__version__ = "0.1.0"

__all__ = [
    "camp",
    "cli",
    "config",
    "core",
    "dataset",
    "detection",
    "functions",
    "geometry",
    "image",
    "matching",
    "nms",
    "pipe_functions",
    "recognition",
    "synth",
    "Functional",
    "make_partial_pipe",
    "make_pipe",
    "Pipe",
    "Pipeable",
    "StateFunc",
]
