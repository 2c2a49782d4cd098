"""Test for pipeline configuration"""
import argparse

import pytest

from herox.config import (
    add_config_flags,
    config_keys,
    ConfigError,
    dump_config,
    load_config,
    overrides_from_args,
    parse_flat,
    PipelineConfig,
)
from herox.matching import save_template


def test_defaults():
    config = load_config()
    assert config == PipelineConfig()
    detector = config.detector()
    assert (detector.nms.t_x, detector.nms.t_y) == (33, 1)
    assert detector.score.score_threshold == 2.5
    assert (detector.score.radius, detector.score.top_k) == (12, 20)
    params = config.recognition_params()
    assert (params.r_min, params.r_max, params.first_skill_size) == (30, 70, 110)
    assert config.dataset.every_n_frames == 10
    assert config.center_window().rect((1280, 720)).as_tuple() == (320, 144, 640, 432)


def test_file_then_overrides(tmp_path):
    path = tmp_path / "herox.cfg"
    path.write_text(
        "# tuned on the synthetic corpus\n"
        "score.threshold = 3.0\n"
        "nms.t_x = 20   # tighter\n"
        "\n"
        "recognition.appearance_model = models/app.hrx\n",
        encoding="utf-8",
    )
    config = load_config(path, {"nms.t_x": "40"})
    assert config.score.threshold == 3.0
    assert config.nms.t_x == 40
    assert config.recognition.source("appearance") == ("models/app.hrx", None)


def test_command_is_split():
    config = load_config(overrides={"recognition.first_skill_command": "python serve.py --gpu 0"})
    assert config.recognition.source("first_skill") == (None, ["python", "serve.py", "--gpu", "0"])


def test_none_values():
    config = load_config(overrides={"nms.t_x": "none"})
    assert config.nms.t_x is None


@pytest.mark.parametrize(
    "overrides",
    [
        {"score.gamma": "1"},
        {"bogus.key": "1"},
        {"score.radius": "0"},
        {"score.alpha": "0", "score.beta": "0"},
        {"score.alpha": "-1"},
        {"score.top_k": "many"},
        {"roi.r_min": "80"},
        {"recognition.fuse_threshold": "1.5"},
        {"recognition.command_timeout": "0"},
        {"recognition.appearance_model": "a.hrx", "recognition.appearance_command": "serve"},
        {"threshold": "1"},
    ],
)
def test_invalid_values(overrides):
    with pytest.raises(ConfigError):
        load_config(overrides=overrides)


def test_bad_files(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")
    path = tmp_path / "bad.cfg"
    path.write_text("score.threshold 3\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="bad.cfg:1"):
        load_config(path)


def test_parse_flat():
    assert parse_flat("a.b = 1\n# c.d = 2\n  e.f=x y  \n") == {"a.b": "1", "e.f": "x y"}


def test_dump_roundtrip(tmp_path):
    config = load_config(overrides={"score.beta": "2.5", "runtime.jobs": "3"})
    path = tmp_path / "dump.cfg"
    path.write_text(dump_config(config), encoding="utf-8")
    assert load_config(path) == config


def test_flags():
    parser = argparse.ArgumentParser()
    add_config_flags(parser)
    args = parser.parse_args(["--score.alpha", "2", "--nms.t_y", "3"])
    assert overrides_from_args(args) == {"score.alpha": "2", "nms.t_y": "3"}
    assert overrides_from_args(parser.parse_args([])) == {}
    every = [arg for key, _ in config_keys() for arg in (f"--{key}", "1")]
    assert len(overrides_from_args(parser.parse_args(every))) == len(list(config_keys()))


def test_template_dir(tmp_path):
    save_template(PipelineConfig().template(), tmp_path)
    config = load_config(overrides={"runtime.template_dir": str(tmp_path)})
    assert config.template().dims == (66, 14)


def test_alpha_may_be_zero():
    config = load_config(overrides={"score.alpha": "0"})
    assert config.score.alpha == 0.0
    assert config.detector().score.alpha == 0.0
