"""Test for the synthetic frame renderer"""
import numpy as np
import pytest

from herox.camp import Camp
from herox.detection import detect_frame
from herox.synth import (
    BAR_COLORS,
    bar_pixels,
    BarSpec,
    glyph,
    HudSpec,
    label_seed,
    render,
    render_sprite_crop,
    SceneSpec,
    SpriteSpec,
)


def test_same_spec_same_pixels():
    spec = SceneSpec(
        width=1560,
        height=720,
        bars=(BarSpec(x=50, y=50, camp=Camp.ENEMY, fill=0.4),),
        sprites=(SpriteSpec(label="hero05", x=300, y=300, occluded=True),),
        background="textured",
        hud=HudSpec(label="hero05"),
        seed=11,
    )
    a, truth_a = render(spec)
    b, truth_b = render(spec)
    np.testing.assert_array_equal(a.numpy(), b.numpy())
    assert truth_a.to_json() == truth_b.to_json()


def test_empty_scene_has_no_detections():
    image, truth = render(SceneSpec(width=1280, height=720, background="noise", seed=3))
    assert truth.bars == ()
    assert detect_frame(image).detections == ()


def test_truth_rects_follow_frame_size():
    bars = tuple(
        BarSpec(x=100 + 200 * i, y=80 + 100 * i, camp=camp)
        for i, camp in enumerate([Camp.SELF, Camp.FRIEND, Camp.ENEMY, Camp.ENEMY])
    )
    image, truth = render(SceneSpec(width=1920, height=1080, bars=bars))
    assert (image.width, image.height) == (1920, 1080)
    assert len(truth.bars) == 4
    assert truth.bars[0].rect.as_tuple() == (100, 80, 66, 14)
    assert truth.bars[0].source_rect.as_tuple() == (150, 120, 99, 21)
    assert truth.skill_circle is None


def test_bar_pixels():
    px = bar_pixels(BarSpec(x=0, y=0, camp=Camp.FRIEND, fill=0.5, level=12))
    assert px.shape == (14, 66, 3)
    np.testing.assert_array_equal(px[5, 14], BAR_COLORS[Camp.FRIEND])
    np.testing.assert_array_equal(px[5, 14 + 25], BAR_COLORS[Camp.FRIEND])
    np.testing.assert_array_equal(px[5, 14 + 26], [88, 88, 88])


@pytest.mark.parametrize(
    "fill, expected",
    [(0.0, Camp.UNKNOWN), (0.02, None), (0.05, Camp.SELF), (1.0, Camp.SELF)],
)
def test_expected_camp(fill, expected):
    assert BarSpec(x=0, y=0, camp=Camp.SELF, fill=fill).expected_camp is expected


def test_close_bars_warn():
    bars = (BarSpec(x=100, y=100, camp=Camp.ENEMY), BarSpec(x=100, y=120, camp=Camp.ENEMY))
    _, truth = render(SceneSpec(width=1280, height=720, bars=bars))
    assert len(truth.warnings) == 1


def test_scene_validation():
    with pytest.raises(ValueError):
        SceneSpec(width=1280, height=720, bars=(BarSpec(x=1250, y=0, camp=Camp.SELF),))
    with pytest.raises(ValueError):
        SceneSpec(width=1280, height=720, background="stripes")
    with pytest.raises(ValueError):
        BarSpec(x=0, y=0, camp=Camp.UNKNOWN)
    with pytest.raises(ValueError):
        BarSpec(x=0, y=0, camp=Camp.SELF, level=16)


def test_hud_truth():
    _, truth = render(SceneSpec(width=1280, height=720, hud=HudSpec(label="hero01")))
    assert truth.skill_region.as_tuple() == (880, 342, 360, 360)
    c = truth.skill_circle
    assert (c.cx, c.cy, c.r) == (970.0, 612.0, 48.0)


def test_glyphs_are_stable_and_distinct():
    a = np.asarray(glyph("hero01"))
    np.testing.assert_array_equal(a, np.asarray(glyph("hero01")))
    assert not np.array_equal(a, np.asarray(glyph("hero02")))
    assert label_seed("hero01") == label_seed("hero01") != label_seed("hero01", "skill0")


def test_sprite_crop():
    crop = render_sprite_crop("hero09", 4)
    assert crop.shape == (163, 163, 3)
    np.testing.assert_array_equal(crop.numpy(), render_sprite_crop("hero09", 4).numpy())
