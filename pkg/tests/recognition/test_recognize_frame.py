"""Test for per-frame recognition routing"""
import threading
import time
from typing import ClassVar

import pytest

from herox.camp import Camp
from herox.detection import detect_frame
from herox.recognition import (
    ClassifierSet,
    HeroClassifier,
    recognize_frame,
    RecognitionParams,
    run_classifier,
    train_reference,
)
from herox.synth import BarSpec, render, render_sprite_crop, SceneSpec, SpriteSpec


class Fixed(HeroClassifier):
    prediction: tuple
    calls: list

    def __init__(self, prediction):
        super().__init__(name="Fixed")
        self.prediction = tuple(prediction)
        self.calls = []

    def _predict(self, image):
        self.calls.append((image.width, image.height))
        return self.prediction


class Slow(HeroClassifier):
    thread_safe: ClassVar[bool] = False

    active: list
    _lock: object

    def __init__(self):
        super().__init__(name="Slow")
        self.active = [0, 0]
        self._lock = threading.Lock()

    def _predict(self, image):
        self.active[0] += 1
        self.active[1] = max(self.active[1], self.active[0])
        time.sleep(0.01)
        self.active[0] -= 1
        return (("A", 1.0),)


def test_routing(three_bar_scene):
    image, _ = three_bar_scene
    found = detect_frame(image)
    appearance = Fixed([("Arthur", 0.9), ("Daji", 0.1)])
    skill = Fixed([("Daji", 0.8)])
    first = Fixed([("Daji", 0.7), ("Arthur", 0.2)])
    results = recognize_frame(
        found.frame.image, found.detections, ClassifierSet(appearance, skill, first)
    )
    assert len(results) == 3
    leading = [r for r in results if r.leading]
    assert len(leading) == 1 and leading[0].detection.camp is Camp.SELF
    lead = leading[0]
    # Daji: (0.1 + 0.8 + 0.7) / 3 beats Arthur: (0.9 + 0 + 0.2) / 3
    assert lead.result.label == "Daji"
    assert [p.source for p in lead.parts] == ["appearance", "skill_region", "first_skill"]
    assert lead.skill_region.as_tuple() == (880, 342, 360, 360)
    assert (lead.first_skill.w, lead.first_skill.h) == (110, 110)
    assert skill.calls == [(360, 360)]
    assert first.calls == [(110, 110)]
    assert appearance.calls == [(163, 163)] * 3
    others = [r for r in results if not r.leading]
    assert all(r.result.label == "Arthur" and r.result.source == "appearance" for r in others)


def test_no_leading_hero_no_skill_crops():
    image, _ = render(
        SceneSpec(
            width=1280,
            height=720,
            bars=(BarSpec(x=200, y=100, camp=Camp.ENEMY, fill=0.7),),
            seed=1,
        )
    )
    found = detect_frame(image)
    skill = Fixed([("A", 1.0)])
    results = recognize_frame(
        found.frame.image, found.detections, ClassifierSet(Fixed([("A", 0.4)]), skill)
    )
    assert len(results) == 1
    assert not results[0].leading
    assert results[0].result.label == "unknown"
    assert skill.calls == []


def test_reference_model_names_rendered_heroes():
    labels = ["hero01", "hero02", "hero03"]
    bars = (
        BarSpec(x=100, y=60, camp=Camp.FRIEND, fill=0.8),
        BarSpec(x=420, y=60, camp=Camp.ENEMY, fill=0.8),
        BarSpec(x=600, y=300, camp=Camp.ENEMY, fill=0.8),
    )
    sprites = tuple(
        SpriteSpec(label=label, x=bar.x + 33 - 60, y=bar.y + 14 + 8 + 21)
        for label, bar in zip(labels, bars)
    )
    image, _ = render(SceneSpec(width=1280, height=720, bars=bars, sprites=sprites, seed=4))
    found = detect_frame(image)
    crops = []
    for label in labels:
        crops += [(render_sprite_crop(label, s), label) for s in range(10)]
    model = train_reference(crops)
    results = recognize_frame(
        found.frame.image,
        found.detections,
        ClassifierSet(model),
        RecognitionParams(appearance_threshold=0.0),
    )
    named = {(r.detection.bbox.x, r.detection.bbox.y): r.result.label for r in results}
    assert named == {(b.x, b.y): label for b, label in zip(bars, labels)}


def test_single_threaded_classifiers_are_serialised(three_bar_scene):
    image, _ = three_bar_scene
    slow = Slow()
    threads = [threading.Thread(target=run_classifier, args=(slow, image)) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert slow.active == [0, 1]


def test_each_classifier_owns_its_lock(three_bar_scene):
    image, _ = three_bar_scene
    first, second = Slow(), Slow()
    assert first.call_lock is first._lock
    assert first.call_lock is not second.call_lock
    with first.call_lock:
        # a held lock on one classifier does not block another
        assert run_classifier(second, image) == (("A", 1.0),)
    fixed = Fixed([("A", 1.0)])
    with fixed.call_lock, fixed.call_lock:
        pass


def test_params_validation():
    with pytest.raises(ValueError):
        RecognitionParams(fuse_threshold=1.5)
    with pytest.raises(ValueError):
        RecognitionParams(r_min=80, r_max=70)
