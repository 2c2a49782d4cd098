"""Test for camp classification"""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from herox.camp import Camp, CampVerdict, classify_camp, leftmost_mean_color, sampling_strip
from herox.image import RasterImage
from herox.matching import PeakCandidate
from herox.synth import BAR_COLORS, bar_pixels, BarSpec


def _rule(r, g, b):
    if r > 100 and r > 1.5 * g and r > 1.5 * b:
        return Camp.ENEMY
    if g > 100 and g > 1.5 * r and g > 1.5 * b:
        return Camp.SELF
    if b > 100 and b > 1.5 * r and b > 1.5 * g:
        return Camp.FRIEND
    if 70 <= r <= 100 and 70 <= g <= 100 and 70 <= b <= 100:
        return Camp.UNKNOWN
    return None


def test_examples():
    assert classify_camp(200, 50, 50).camp is Camp.ENEMY
    assert classify_camp(40, 180, 60).camp is Camp.SELF
    assert classify_camp(50, 90, 220).camp is Camp.FRIEND
    assert classify_camp(80, 85, 90).camp is Camp.UNKNOWN
    assert classify_camp(120, 110, 115).rejected


def test_boundaries():
    # 150 is not strictly above 1.5 * 100
    assert classify_camp(150, 100, 20).rejected
    assert classify_camp(100, 20, 20).rejected
    assert classify_camp(100.5, 20, 20).camp is Camp.ENEMY
    assert classify_camp(70, 100, 70).camp is Camp.UNKNOWN
    assert classify_camp(69.9, 80, 80).rejected


def test_grid_against_rule():
    levels = np.linspace(0, 255, 52)
    for r, g, b in itertools.product(levels, repeat=3):
        verdict = classify_camp(r, g, b)
        expected = _rule(r, g, b)
        if expected is None:
            assert verdict.rejected, (r, g, b)
        else:
            assert verdict.camp is expected, (r, g, b)


CHANNEL_CAMPS = (Camp.ENEMY, Camp.SELF, Camp.FRIEND)
colors = st.tuples(*[st.floats(0.0, 255.0, allow_nan=False)] * 3)


@settings(max_examples=500, deadline=None)
@given(colors, st.permutations([0, 1, 2]))
def test_channel_permutation_permutes_camp(color, perm):
    before = classify_camp(*color)
    after = classify_camp(*[color[p] for p in perm])
    assert after.rejected == before.rejected
    if before.camp in CHANNEL_CAMPS:
        channel = CHANNEL_CAMPS.index(before.camp)
        assert after.camp is CHANNEL_CAMPS[perm.index(channel)]
    else:
        assert after.camp is before.camp


@settings(max_examples=500, deadline=None)
@given(colors, st.floats(1.0, 4.0, exclude_min=True))
def test_scaling_keeps_dominant_camp(color, k):
    verdict = classify_camp(*color)
    if verdict.camp not in CHANNEL_CAMPS:
        return
    scaled = [min(c * k, 255.0) for c in color]
    after = classify_camp(*scaled)
    assert after.rejected or after.camp is verdict.camp
    i = CHANNEL_CAMPS.index(verdict.camp)
    margin = min(color[i] - 1.5 * color[j] for j in range(3) if j != i)
    if max(color) * k <= 255.0 and margin > 1e-9 * color[i]:
        assert after.camp is verdict.camp


def test_verdict_holds_one_outcome():
    with pytest.raises(ValueError):
        CampVerdict(camp=Camp.SELF, rejected=True)
    with pytest.raises(ValueError):
        CampVerdict()


def test_strip_geometry(template):
    strip = sampling_strip(PeakCandidate(x=100, y=40, value=1.0), template)
    assert strip.as_tuple() == (114, 44, 4, 6)


@pytest.mark.parametrize("camp", [Camp.SELF, Camp.FRIEND, Camp.ENEMY])
def test_rendered_bar_colors(template, camp):
    frame = np.zeros((40, 120, 3), dtype=np.uint8)
    frame[10:24, 20:86] = bar_pixels(BarSpec(x=20, y=10, camp=camp, fill=0.5))
    color = leftmost_mean_color(RasterImage(frame), PeakCandidate(x=20, y=10, value=1.0), template)
    np.testing.assert_allclose(color, BAR_COLORS[camp])
    assert classify_camp(*color).camp is camp


def test_empty_bar_is_unknown(template):
    frame = np.zeros((40, 120, 3), dtype=np.uint8)
    frame[10:24, 20:86] = bar_pixels(BarSpec(x=20, y=10, camp=Camp.ENEMY, fill=0.0))
    color = leftmost_mean_color(RasterImage(frame), PeakCandidate(x=20, y=10, value=1.0), template)
    assert classify_camp(*color).camp is Camp.UNKNOWN


def test_color_needs_rgb_inside_frame(template):
    gray = RasterImage(np.zeros((40, 120), dtype=np.uint8))
    with pytest.raises(ValueError):
        leftmost_mean_color(gray, PeakCandidate(x=0, y=0, value=1.0), template)
    rgb = RasterImage(np.zeros((40, 120, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        leftmost_mean_color(rgb, PeakCandidate(x=80, y=0, value=1.0), template)
