"""Test for blood-bar detection"""
import time

import numpy as np
import pytest

import herox.pipe_functions as PF
from herox import Pipeable
from herox.camp import Camp
from herox.detection import calibrate_threshold, detect_frame, Detector
from herox.image import RasterImage
from herox.matching import ScoreParams
from herox.synth import BarSpec, render, render_shop_scene, SceneSpec


def _found(result):
    return sorted((d.bbox.x, d.bbox.y, d.camp) for d in result.detections)


def test_detects_each_camp(three_bar_scene):
    image, truth = three_bar_scene
    result = detect_frame(image)
    expected = sorted((b.rect.x, b.rect.y, b.camp) for b in truth.bars)
    assert _found(result) == expected
    assert result.frame.scale == 1.0
    scores = [d.score for d in result.detections]
    assert scores == sorted(scores, reverse=True)
    assert all(d.score >= ScoreParams().score_threshold for d in result.detections)


def test_leading_is_self(three_bar_scene):
    image, _ = three_bar_scene
    result = detect_frame(image)
    assert result.leading.camp is Camp.SELF
    assert result.leading.bbox.as_tuple() == (607, 260, 66, 14)
    assert result.leading.appearance.as_tuple() == (559, 282, 163, 163)
    assert len(result.by_camp(Camp.ENEMY)) == 1


def test_source_coordinates_for_large_frames():
    spec = SceneSpec(
        width=1920,
        height=1080,
        bars=(
            BarSpec(x=300, y=100, camp=Camp.ENEMY, fill=0.8),
            BarSpec(x=600, y=400, camp=Camp.FRIEND, fill=0.5),
        ),
        background="solid",
        seed=2,
    )
    image, truth = render(spec)
    result = detect_frame(image)
    assert len(result.detections) == 2
    found = {d.camp: d.to_source(result.frame.scale) for d in result.detections}
    for bar in truth.bars:
        rect = found[bar.camp]
        assert abs(rect.x - bar.source_rect.x) <= 3
        assert abs(rect.y - bar.source_rect.y) <= 3
        assert abs(rect.w - 99) <= 2


def test_empty_bar_has_unknown_camp():
    spec = SceneSpec(
        width=1280,
        height=720,
        bars=(BarSpec(x=200, y=200, camp=Camp.FRIEND, fill=0.0),),
        background="noise",
        seed=5,
    )
    image, _ = render(spec)
    result = detect_frame(image)
    assert [(d.bbox.x, d.bbox.y, d.camp) for d in result.detections] == [(200, 200, Camp.UNKNOWN)]


def test_shop_scene_has_no_detections():
    image, truth = render_shop_scene(seed=1)
    result = detect_frame(image)
    assert truth.bars == ()
    assert result.detections == ()
    assert len(result.rejected) > 0


def test_gray_and_tiny_frames():
    gray = RasterImage(np.full((720, 1280), 100, dtype=np.uint8))
    assert detect_frame(gray).detections == ()
    tiny = RasterImage(np.zeros((720, 40, 3), dtype=np.uint8))
    assert detect_frame(tiny).detections == ()


def test_timed_stages(three_bar_scene):
    image, _ = three_bar_scene
    result, timings = Detector.default().timed(image)
    assert len(result.detections) == 3
    assert set(timings) == {"normalize", "grayscale", "match", "peaks", "nms", "camp"}


def test_matching_pipe_names():
    assert Detector.default().matching_pipe().names == ("grayscale", "match", "peaks", "nms")


def test_detect_as_pipe_stage(three_bar_scene):
    image, _ = three_bar_scene
    result = (Pipeable(image) >> PF.detect_frame(detector=Detector.default()))()
    assert len(result.detections) == 3


def test_calibrate_threshold():
    assert calibrate_threshold([3.0, 4.0], [1.0, 2.0]) == pytest.approx(2.5)
    assert calibrate_threshold([3.0, 5.0], []) == pytest.approx(1.5)
    # one overlap is unavoidable; the widest gap decides
    t = calibrate_threshold([2.0, 6.0, 7.0], [1.0, 3.0])
    assert 3.0 < t < 6.0
    with pytest.raises(ValueError):
        calibrate_threshold([], [1.0])


def _separated_scene(rng, width, height):
    slots = [(c, r) for c in range(4) for r in range(4)]
    chosen = rng.permutation(len(slots))[: int(rng.integers(1, 9))]
    bars = []
    for i in chosen:
        c, r = slots[i]
        bars.append(
            BarSpec(
                x=40 + 200 * c + int(rng.integers(0, 31)),
                y=40 + 150 * r + int(rng.integers(0, 31)),
                camp=[Camp.SELF, Camp.FRIEND, Camp.ENEMY][int(rng.integers(3))],
                fill=float(rng.uniform(0.05, 1.0)),
                level=int(rng.integers(1, 16)),
            )
        )
    background = ["solid", "noise", "textured"][int(rng.integers(3))]
    return SceneSpec(
        width=width,
        height=height,
        bars=tuple(bars),
        background=background,
        seed=int(rng.integers(1000)),
    )


def test_rendered_bars_are_recovered():
    rng = np.random.default_rng(17)
    sizes = [(1280, 720), (1560, 720), (1920, 1080)]
    for i in range(12):
        image, truth = render(_separated_scene(rng, *sizes[i % 3]))
        found = detect_frame(image).detections
        for bar in truth.bars:
            near = [
                d
                for d in found
                if abs(d.bbox.x - bar.rect.x) <= 2 and abs(d.bbox.y - bar.rect.y) <= 2
            ]
            assert near, (i, bar.rect.as_tuple())
            assert all(d.camp is bar.expected_camp for d in near)


@pytest.mark.slow
def test_frame_latency(three_bar_scene):
    image, _ = three_bar_scene
    detector = Detector.default()
    detector(image)
    times = []
    for _ in range(10):
        start = time.perf_counter()
        detector(image)
        times.append((time.perf_counter() - start) * 1e3)
    assert np.median(times) <= 160.0
