"""Test for ROI geometry"""
import numpy as np
import pytest

from herox.geometry import (
    appearance_rect,
    Circle,
    clamp_rect,
    first_skill_rect,
    Rect,
    skill_region_rect,
)


def test_skill_region_standard_frame():
    assert skill_region_rect((1280, 720)).as_tuple() == (880, 342, 360, 360)


def test_skill_region_wide_frame():
    rect = skill_region_rect((1560, 720))
    assert rect.as_tuple() == (1020, 342, 360, 360)


def test_skill_region_narrow_frame():
    # 0.5 * 960 + 0.1875 * 1280 = 720, clamped so the region stays inside
    rect = skill_region_rect((960, 720))
    assert rect.as_tuple() == (600, 342, 360, 360)


def test_skill_region_scales_with_height():
    assert skill_region_rect((1920, 1080)).as_tuple() == (1320, 513, 540, 540)


def test_skill_region_random_frames():
    rng = np.random.default_rng(4)
    for h, aspect in zip(rng.integers(360, 1441, size=10), rng.uniform(4 / 3, 2.4, size=10)):
        w = int(round(h * aspect))
        side = 0.5 * h
        x = min(0.5 * w + 0.1875 * (16 / 9) * h, w - side)
        rect = skill_region_rect((w, int(h)))
        assert abs(rect.x - x) <= 1 and abs(rect.y - 0.475 * h) <= 1
        assert abs(rect.w - side) <= 1 and abs(rect.h - side) <= 1
        assert rect.right <= w and rect.bottom <= h


def test_appearance_under_bar():
    rect = appearance_rect(Rect(607, 300, 66, 14), (1280, 720))
    assert rect.as_tuple() == (640 - 81, 322, 163, 163)


def test_appearance_clamped():
    assert appearance_rect(Rect(0, 650, 66, 14), (1280, 720)).as_tuple() == (0, 557, 163, 163)
    assert appearance_rect(Rect(1214, 10, 66, 14), (1280, 720)).x == 1280 - 163


def test_first_skill_crop():
    rect = first_skill_rect((360, 360), [Circle(60, 300, 45, 200.0)])
    assert rect.as_tuple() == (5, 245, 110, 110)


def test_first_skill_crop_clamped():
    rect = first_skill_rect((360, 360), [Circle(20, 340, 45, 200.0)])
    assert rect.as_tuple() == (0, 250, 110, 110)


def test_first_skill_without_circles():
    assert first_skill_rect((360, 360), []) is None


def test_clamp_shrinks_large_rects():
    assert clamp_rect(Rect(-5, -5, 500, 50), 300, 200).as_tuple() == (0, 0, 300, 50)


def test_circle_radius_positive():
    with pytest.raises(ValueError):
        Circle(1.0, 1.0, 0.0, 1.0)
