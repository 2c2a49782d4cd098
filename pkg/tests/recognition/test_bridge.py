"""Test for the subprocess classifier bridge"""
import os
import sys
import textwrap

import numpy as np
import pytest

from herox.image import RasterImage
from herox.recognition import ClassifierError, SubprocessClassifier


ECHO_CHILD = """
import json
import sys

from PIL import Image

for line in sys.stdin:
    request = json.loads(line)
    with Image.open(request["image_path"]) as im:
        width, height = im.size
    label = "%s:%dx%d" % (request["roi_type"], width, height)
    print(json.dumps({"labels": ["other", label], "confidences": [0.25, 0.75]}), flush=True)
"""

ERROR_CHILD = """
import sys

for line in sys.stdin:
    print('{"error": "model not loaded"}', flush=True)
"""

GARBAGE_CHILD = """
import sys

for line in sys.stdin:
    print("not json", flush=True)
"""

SILENT_ONCE_CHILD = """
import json
import os
import sys
import time

marker = os.path.join(os.path.dirname(os.path.abspath(__file__)), "started")
first = not os.path.exists(marker)
open(marker, "w").close()
for line in sys.stdin:
    if first:
        time.sleep(60)
    print(json.dumps({"labels": ["awake"], "confidences": [1.0]}), flush=True)
"""


def _bridge(tmp_path, source, roi_type="appearance", **kwargs):
    script = tmp_path / "child.py"
    script.write_text(textwrap.dedent(source), encoding="utf-8")
    return SubprocessClassifier([sys.executable, str(script)], roi_type, **kwargs)


def _crop(side):
    return RasterImage(np.full((side, side, 3), 120, dtype=np.uint8))


def test_round_trip(tmp_path):
    bridge = _bridge(tmp_path, ECHO_CHILD, "first_skill")
    try:
        assert bridge.classify(_crop(110)) == (("first_skill:110x110", 0.75), ("other", 0.25))
        # the child is kept alive between calls
        assert bridge.classify(_crop(32))[0][0] == "first_skill:32x32"
    finally:
        bridge.close()
    assert not bridge.thread_safe


def test_child_error(tmp_path):
    bridge = _bridge(tmp_path, ERROR_CHILD)
    try:
        with pytest.raises(ClassifierError, match="model not loaded"):
            bridge.classify(_crop(16))
    finally:
        bridge.close()


def test_malformed_reply(tmp_path):
    bridge = _bridge(tmp_path, GARBAGE_CHILD)
    try:
        with pytest.raises(ClassifierError):
            bridge.classify(_crop(16))
    finally:
        bridge.close()


def test_missing_program(tmp_path):
    bridge = SubprocessClassifier([str(tmp_path / "no-such-program")])
    with pytest.raises(ClassifierError):
        bridge.classify(_crop(16))


def test_empty_command():
    with pytest.raises(ValueError):
        SubprocessClassifier([])


def test_unanswered_request_times_out_and_restarts(tmp_path):
    bridge = _bridge(tmp_path, SILENT_ONCE_CHILD, timeout=3.0)
    try:
        with pytest.raises(ClassifierError, match="no reply"):
            bridge.classify(_crop(16))
        assert bridge.classify(_crop(16)) == (("awake", 1.0),)
    finally:
        bridge.close()


def test_close_removes_workdir(tmp_path):
    bridge = _bridge(tmp_path, ECHO_CHILD)
    assert bridge.workdir is None
    bridge.classify(_crop(16))
    workdir = bridge.workdir
    assert os.path.isdir(workdir)
    bridge.close()
    assert not os.path.exists(workdir)
    assert bridge.workdir is None
    bridge.close()


def test_timeout_must_be_positive():
    with pytest.raises(ValueError):
        SubprocessClassifier(["serve"], timeout=0)
