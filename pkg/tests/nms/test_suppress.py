"""Test for non-maximum suppression"""
import numpy as np
import pytest

import herox.pipe_functions as PF
from herox.matching import PeakCandidate
from herox.nms import NmsParams, suppress


def _peaks(*rows):
    return [PeakCandidate(x=x, y=y, value=s, score=s) for x, y, s in rows]


def _reference(candidates, t_x, t_y):
    real = [True] * len(candidates)
    for i in range(len(candidates)):
        for j in range(i):
            if (
                real[j]
                and abs(candidates[j].y - candidates[i].y) < t_y
                and abs(candidates[j].x - candidates[i].x) < t_x
            ):
                real[i] = False
                break
    return [(c.x, c.y) for c, r in zip(candidates, real) if r]


def test_against_reference():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(0, 25))
        xs = rng.integers(0, 120, size=n)
        ys = rng.integers(0, 12, size=n)
        scores = np.sort(rng.uniform(0, 5, size=n))[::-1]
        candidates = _peaks(*zip(xs.tolist(), ys.tolist(), scores.tolist()))
        t_x, t_y = int(rng.integers(0, 40)), int(rng.integers(0, 4))
        kept = suppress(candidates, NmsParams(t_x=t_x, t_y=t_y))
        assert [(c.x, c.y) for c in kept] == _reference(candidates, t_x, t_y)
        assert all(c.is_real_detection for c in kept)


def test_same_row_neighbours():
    kept = suppress(_peaks((100, 50, 3.0), (110, 50, 2.0)), NmsParams(t_x=33, t_y=1))
    assert [(c.x, c.y) for c in kept] == [(100, 50)]


def test_thresholds_are_strict():
    kept = suppress(_peaks((100, 50, 3.0), (133, 50, 2.0)), NmsParams(t_x=33, t_y=1))
    assert len(kept) == 2
    kept = suppress(_peaks((100, 50, 3.0), (110, 51, 2.0)), NmsParams(t_x=33, t_y=1))
    assert len(kept) == 2
    kept = suppress(_peaks((100, 50, 3.0), (110, 51, 2.0)), NmsParams(t_x=33, t_y=2))
    assert len(kept) == 1


def test_suppressed_peaks_do_not_suppress():
    # the middle peak is cleared by the first, so it cannot clear the third
    kept = suppress(
        _peaks((0, 0, 3.0), (20, 0, 2.0), (40, 0, 1.0)), NmsParams(t_x=25, t_y=1)
    )
    assert [c.x for c in kept] == [0, 40]


def test_empty_and_single():
    assert suppress([], NmsParams(t_x=33)) == []
    single = _peaks((5, 5, 1.0))
    assert len(suppress(single, NmsParams(t_x=33))) == 1


def test_unsorted_input_raises():
    with pytest.raises(ValueError):
        suppress(_peaks((0, 0, 1.0), (50, 0, 2.0)), NmsParams(t_x=33))


def test_params_for_template(template):
    params = NmsParams.for_template(template)
    assert (params.t_x, params.t_y) == (33, 1)
    with pytest.raises(ValueError):
        NmsParams(t_x=-1)


def test_pipe_stage():
    stage = PF.suppress(params=NmsParams(t_x=33, t_y=1))
    kept = stage(_peaks((100, 50, 3.0), (110, 50, 2.0), (300, 50, 1.0)))
    assert [c.x for c in kept] == [100, 300]
