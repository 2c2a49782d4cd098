"""Pipeline configuration.

A config file is flat text with one `section.key = value` per line and `#`
comments. Every key is also a command-line flag `--section.key`; flags win
over the file, and the file wins over the defaults below.
"""
import argparse
import os
import shlex
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator, ValidationError

from .dataset import CenterWindow
from .detection import Detector
from .matching import (
    blood_bar_template,
    BloodBarTemplate,
    load_template,
    MASK_FILE,
    ScoreParams,
    TEMPLATE_FILE,
)
from .nms import NmsParams
from .recognition import RecognitionParams


_NONE = {"", "none", "null"}


class ConfigError(ValueError):
    """Raised for unreadable config files and invalid or unknown keys."""


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class ScoreSection(_Section):
    alpha: float = Field(1.0, ge=0)
    beta: float = Field(4.0, ge=0)
    radius: int = Field(12, ge=1)
    top_k: int = Field(20, ge=1)
    threshold: float = 2.5

    @model_validator(mode="after")
    def check_weights(self):
        if self.alpha + self.beta <= 0:
            raise ValueError("alpha and beta cannot both be 0")
        return self


class NmsSection(_Section):
    t_x: Optional[int] = Field(None, ge=0, description="defaults to half the template width")
    t_y: int = Field(1, ge=0)


class CampSection(_Section):
    strip_width: int = Field(4, ge=1)
    strip_inset: int = Field(1, ge=0)


class RoiSection(_Section):
    height: int = Field(720, ge=1)
    appearance_size: int = Field(163, ge=1)
    appearance_offset: int = Field(8, ge=0)
    first_skill_size: int = Field(110, ge=1)
    r_min: int = Field(30, ge=1)
    r_max: int = Field(70, ge=1)

    @model_validator(mode="after")
    def check_radii(self):
        if self.r_min > self.r_max:
            raise ValueError(f"r_min {self.r_min} exceeds r_max {self.r_max}")
        return self


class RecognitionSection(_Section):
    appearance_model: Optional[str] = None
    skill_region_model: Optional[str] = None
    first_skill_model: Optional[str] = None
    appearance_command: Optional[str] = None
    skill_region_command: Optional[str] = None
    first_skill_command: Optional[str] = None
    command_timeout: float = Field(30.0, gt=0)
    fuse_threshold: float = Field(0.5, ge=0, le=1)
    appearance_threshold: float = Field(0.5, ge=0, le=1)

    @model_validator(mode="after")
    def check_one_source(self):
        for roi in ("appearance", "skill_region", "first_skill"):
            if getattr(self, f"{roi}_model") and getattr(self, f"{roi}_command"):
                raise ValueError(f"set either {roi}_model or {roi}_command, not both")
        return self

    def source(self, roi: str) -> Tuple[Optional[str], Optional[List[str]]]:
        """`(model path, bridge command)` of a ROI type; at most one is set."""
        command = getattr(self, f"{roi}_command")
        return getattr(self, f"{roi}_model"), shlex.split(command) if command else None


class DatasetSection(_Section):
    every_n_frames: int = Field(10, ge=1)
    window_width: float = Field(0.5, gt=0, le=1)
    window_height: float = Field(0.6, gt=0, le=1)
    train_fraction: float = Field(0.8, gt=0, lt=1)
    seed: int = 0


class RuntimeSection(_Section):
    jobs: int = Field(1, ge=1)
    template_dir: Optional[str] = None


class PipelineConfig(_Section):
    """All pipeline parameters, one section per stage."""

    score: ScoreSection = Field(default_factory=ScoreSection)
    nms: NmsSection = Field(default_factory=NmsSection)
    camp: CampSection = Field(default_factory=CampSection)
    roi: RoiSection = Field(default_factory=RoiSection)
    recognition: RecognitionSection = Field(default_factory=RecognitionSection)
    dataset: DatasetSection = Field(default_factory=DatasetSection)
    runtime: RuntimeSection = Field(default_factory=RuntimeSection)

    def template(self) -> BloodBarTemplate:
        if self.runtime.template_dir is None:
            return blood_bar_template()
        d = Path(self.runtime.template_dir)
        return load_template(d / TEMPLATE_FILE, d / MASK_FILE)

    def score_params(self) -> ScoreParams:
        s = self.score
        return ScoreParams(
            alpha=s.alpha, beta=s.beta, radius=s.radius, top_k=s.top_k, score_threshold=s.threshold
        )

    def nms_params(self, template: BloodBarTemplate) -> NmsParams:
        if self.nms.t_x is None:
            return NmsParams.for_template(template, self.nms.t_y)
        return NmsParams(t_x=self.nms.t_x, t_y=self.nms.t_y)

    def detector(self, template: Optional[BloodBarTemplate] = None) -> Detector:
        template = self.template() if template is None else template
        return Detector(
            template=template,
            score=self.score_params(),
            nms=self.nms_params(template),
            height=self.roi.height,
            strip_width=self.camp.strip_width,
            strip_inset=self.camp.strip_inset,
            appearance_size=self.roi.appearance_size,
            appearance_offset=self.roi.appearance_offset,
        )

    def recognition_params(self) -> RecognitionParams:
        return RecognitionParams(
            fuse_threshold=self.recognition.fuse_threshold,
            appearance_threshold=self.recognition.appearance_threshold,
            r_min=self.roi.r_min,
            r_max=self.roi.r_max,
            first_skill_size=self.roi.first_skill_size,
        )

    def center_window(self) -> CenterWindow:
        return CenterWindow(self.dataset.window_width, self.dataset.window_height)


def config_keys() -> Iterator[Tuple[str, object]]:
    """Every dotted key with its default."""
    defaults = PipelineConfig()
    for section in PipelineConfig.model_fields:
        sub = getattr(defaults, section)
        for key in type(sub).model_fields:
            yield f"{section}.{key}", getattr(sub, key)


def parse_flat(text: str, source: str = "<config>") -> Dict[str, str]:
    """Parse `section.key = value` lines.

    Raises:
        ConfigError: On a line without `=` or a key without a section.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.count(".") != 1:
            raise ConfigError(f"{source}:{lineno}: key {key!r} must be 'section.key'")
        values[key] = value
    return values


def _nest(flat: Mapping[str, str]) -> Dict[str, Dict[str, Optional[str]]]:
    nested: Dict[str, Dict[str, Optional[str]]] = {}
    for key, value in flat.items():
        section, name = key.split(".", 1)
        nested.setdefault(section, {})[name] = None if value.lower() in _NONE else value
    return nested


def load_config(
    path: Optional[Union[str, os.PathLike]] = None,
    overrides: Optional[Mapping[str, str]] = None,
) -> PipelineConfig:
    """Build the configuration from defaults, an optional file and overrides.

    Args:
        path (PathLike, optional): Flat config file.
        overrides (Mapping[str, str], optional): Dotted keys that win over the file.

    Returns:
        PipelineConfig: The validated configuration.

    Raises:
        ConfigError: If the file cannot be read, a key is unknown, or a value
            is invalid.

    Example:
        >>> load_config(overrides={"nms.t_x": "40"}).nms.t_x
        40
    """
    flat: Dict[str, str] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        flat.update(parse_flat(text, str(path)))
    for key, value in (overrides or {}).items():
        if key.count(".") != 1:
            raise ConfigError(f"key {key!r} must be 'section.key'")
        flat[key] = str(value)
    try:
        return PipelineConfig.model_validate(_nest(flat))
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid configuration: {problems}") from e


def dump_config(config: PipelineConfig) -> str:
    """The configuration as flat config-file text."""
    lines = []
    for key, _ in config_keys():
        section, name = key.split(".")
        value = getattr(getattr(config, section), name)
        lines.append(f"{key} = {'none' if value is None else value}")
    return "\n".join(lines) + "\n"


FLAG_PREFIX = "cfg:"


def add_config_flags(parser: argparse.ArgumentParser) -> None:
    """Add one `--section.key` flag per config key."""
    group = parser.add_argument_group("configuration keys")
    for key, default in config_keys():
        group.add_argument(
            f"--{key}",
            dest=FLAG_PREFIX + key,
            default=argparse.SUPPRESS,
            metavar="VALUE",
            help=f"default: {default}",
        )


def overrides_from_args(args: argparse.Namespace) -> Dict[str, str]:
    """The `--section.key` flags given on the command line."""
    return {
        k[len(FLAG_PREFIX) :]: v for k, v in vars(args).items() if k.startswith(FLAG_PREFIX)
    }
