import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import equinox as eqx

from ..camp import Camp
from ..detection import Detector
from ..geometry import find_first_skill, skill_region_rect
from ..image import crop, ImageReadError, RasterImage, read_png, Rect, write_png
from ..recognition import RoiType


logger = logging.getLogger(__name__)

SAMPLES_MANIFEST = "samples_manifest.json"
SCHEMA_VERSION = 1

PathLike = Union[str, os.PathLike]


class SampleRecord(eqx.Module):
    """One labelled training crop.

    Attributes:
        roi_type (RoiType): Appearance, skill region or first skill.
        label (str): Hero name of the video.
        frame_id (str): Source frame identifier.
        rect (Rect): Crop in normalized-frame coordinates.
        file (str): Crop path relative to the output directory.
    """

    roi_type: RoiType
    label: str
    frame_id: str
    rect: Rect
    file: str = ""

    def __check_init__(self):
        side = self.roi_type.size
        if (self.rect.w, self.rect.h) != (side, side):
            raise ValueError(
                f"{self.roi_type.value} crops are {side}x{side}, got {self.rect.w}x{self.rect.h}"
            )

    def to_json(self) -> dict:
        return {
            "roi_type": self.roi_type.value,
            "label": self.label,
            "frame_id": self.frame_id,
            "rect": list(self.rect.as_tuple()),
            "file": self.file,
        }


class CenterWindow(eqx.Module):
    """Central part of the frame where the leading hero's bar is looked for."""

    width_fraction: float = 0.5
    height_fraction: float = 0.6

    def __check_init__(self):
        for name in ("width_fraction", "height_fraction"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {value}")

    def rect(self, frame_dims: Tuple[int, int]) -> Rect:
        w, h = frame_dims
        ww = max(int(round(w * self.width_fraction)), 1)
        wh = max(int(round(h * self.height_fraction)), 1)
        return Rect((w - ww) // 2, (h - wh) // 2, ww, wh)

    def contains(self, rect: Rect, frame_dims: Tuple[int, int]) -> bool:
        """Whether the center of `rect` lies in the window."""
        window = self.rect(frame_dims)
        cx, cy = rect.center
        return window.x <= cx < window.right and window.y <= cy < window.bottom


def _save(image: RasterImage, out_dir: Path, label: str, roi: RoiType, frame_id: str) -> str:
    rel = Path(label) / roi.value / f"{frame_id}.png"
    (out_dir / rel).parent.mkdir(parents=True, exist_ok=True)
    write_png(image, out_dir / rel, atomic=True)
    return rel.as_posix()


def frame_samples(
    image: RasterImage,
    frame_id: str,
    video_label: str,
    out_dir: PathLike,
    detector: Detector,
    window: CenterWindow = CenterWindow(),
    r_min: int = 30,
    r_max: int = 70,
) -> List[SampleRecord]:
    """Crops of the leading hero of one frame, written under `out_dir`.

    The strongest self-camp bar whose center lies in the central window
    gives an appearance crop and a skill-region crop; a first-skill crop is
    added when a skill circle is found. Frames without such a bar give none;
    frames too narrow for a full skill region give the appearance crop only.
    """
    out_dir = Path(out_dir)
    found = detector(image)
    frame = found.frame.image
    dims = (frame.width, frame.height)
    leading = next(
        (
            d
            for d in found.detections
            if d.camp is Camp.SELF and window.contains(d.bbox, dims)
        ),
        None,
    )
    if leading is None:
        return []
    records = []
    appearance, rect = crop(frame, leading.appearance)
    records.append(
        SampleRecord(
            RoiType.APPEARANCE,
            video_label,
            frame_id,
            rect,
            _save(appearance, out_dir, video_label, RoiType.APPEARANCE, frame_id),
        )
    )
    region, region_rect = crop(frame, skill_region_rect(dims))
    side = RoiType.SKILL_REGION.size
    if (region_rect.w, region_rect.h) != (side, side):
        logger.warning(
            "frame %s: %dx%d frame leaves a %dx%d skill region, skill crops skipped",
            frame_id,
            *dims,
            region_rect.w,
            region_rect.h,
        )
        return records
    records.append(
        SampleRecord(
            RoiType.SKILL_REGION,
            video_label,
            frame_id,
            region_rect,
            _save(region, out_dir, video_label, RoiType.SKILL_REGION, frame_id),
        )
    )
    local, _ = find_first_skill(region, r_min, r_max, RoiType.FIRST_SKILL.size)
    if local is not None:
        first, _ = crop(region, local)
        records.append(
            SampleRecord(
                RoiType.FIRST_SKILL,
                video_label,
                frame_id,
                local.shift(region_rect.x, region_rect.y),
                _save(first, out_dir, video_label, RoiType.FIRST_SKILL, frame_id),
            )
        )
    return records


def extract_leading_samples(
    frames: Sequence[PathLike],
    video_label: str,
    out_dir: PathLike,
    detector: Optional[Detector] = None,
    window: CenterWindow = CenterWindow(),
    every_n: int = 1,
    jobs: int = 1,
    r_min: int = 30,
    r_max: int = 70,
) -> List[SampleRecord]:
    """Auto-label the leading hero's crops over the frames of one video.

    Every `every_n`-th frame (in the given order) is read and passed to
    `frame_samples`; unreadable frames are skipped with a warning. The
    records, sorted by frame and ROI type, are also written to
    `samples_manifest.json` in `out_dir`.

    Args:
        frames (Sequence[PathLike]): Frame files of one video, in order.
        video_label (str): Hero name of the video's player.
        out_dir (PathLike): Output directory.
        detector (Detector, optional): Detector; defaults to the built-in one.
        window (CenterWindow, optional): Central search window.
        every_n (int, optional): Frame stride. Defaults to 1.
        jobs (int, optional): Worker threads. Defaults to 1.
        r_min (int, optional): Smallest skill-circle radius.
        r_max (int, optional): Largest skill-circle radius.

    Returns:
        List[SampleRecord]: The emitted samples.
    """
    if every_n < 1:
        raise ValueError(f"every_n must be at least 1, got {every_n}")
    detector = Detector.default() if detector is None else detector
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def work(path) -> List[SampleRecord]:
        try:
            image = read_png(path)
        except ImageReadError as e:
            logger.warning("skipping frame: %s", e)
            return []
        return frame_samples(
            image, Path(path).stem, video_label, out_dir, detector, window, r_min, r_max
        )

    sampled = list(frames)[::every_n]
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        records = [r for batch in pool.map(work, sampled) for r in batch]
    records.sort(key=lambda r: (r.frame_id, r.roi_type.value))

    manifest = {
        "schema": SCHEMA_VERSION,
        "label": video_label,
        "samples": [r.to_json() for r in records],
    }
    path = out_dir / SAMPLES_MANIFEST
    tmp = path.with_name(f".{SAMPLES_MANIFEST}.tmp")
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    os.replace(tmp, path)
    logger.info("%d samples from %d frames of %s", len(records), len(sampled), video_label)
    return records


def load_samples(out_dir: PathLike) -> List[SampleRecord]:
    """Records of a `samples_manifest.json`."""
    path = Path(out_dir) / SAMPLES_MANIFEST
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"{path}: expected schema {SCHEMA_VERSION}")
    return [
        SampleRecord(RoiType(s["roi_type"]), s["label"], s["frame_id"], Rect(*s["rect"]), s["file"])
        for s in data["samples"]
    ]
