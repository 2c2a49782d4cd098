import json
import logging
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from ..config import ConfigError, PipelineConfig
from ..core import summary
from ..dataset import extract_leading_samples, load_samples, split_corpus
from ..detection import Detection
from ..image import read_png, write_png
from ..matching import save_template
from ..recognition import (
    accumulate_video,
    ClassifierSet,
    evaluate_classifier,
    HeroClassifier,
    HeroRecognition,
    load_reference,
    recognize_frame,
    RoiType,
    save_reference,
    select_heroes,
    SubprocessClassifier,
    train_reference,
)
from ..synth import render_corpus
from ._bench import bench_corpus, calibrate_corpus
from ._overlay import boxes_of, draw_overlay, pick_frame_entry


logger = logging.getLogger(__name__)

SCHEMA = 1
FRAME_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp"}

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int) -> List[R]:
    """`fn` over `items` on `jobs` threads; results keep the input order."""
    items = list(items)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def emit(payload: dict, output: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def frame_files(directory) -> List[Path]:
    """Image files of a frame directory, in lexicographic order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ValueError(f"{directory} is not a directory")
    return sorted(p for p in directory.iterdir() if p.suffix.lower() in FRAME_SUFFIXES)


def _detection_json(d: Detection, scale: float) -> dict:
    return {
        "bbox": list(d.to_source(scale).as_tuple()),
        "camp": d.camp.value,
        "score": float(d.score),
        "value": float(d.value),
    }


def _classifier(config: PipelineConfig, roi: RoiType) -> Optional[HeroClassifier]:
    model, command = config.recognition.source(roi.value)
    if model:
        return load_reference(model)
    if command:
        return SubprocessClassifier(command, roi.value, config.recognition.command_timeout)
    return None


def load_classifiers(config: PipelineConfig) -> ClassifierSet:
    """Classifiers named by the `recognition` section.

    Raises:
        ConfigError: If no appearance classifier is configured.
        ClassifierError: If a model cannot be loaded.
    """
    appearance = _classifier(config, RoiType.APPEARANCE)
    if appearance is None:
        raise ConfigError(
            "recognition needs recognition.appearance_model or recognition.appearance_command"
        )
    return ClassifierSet(
        appearance=appearance,
        skill_region=_classifier(config, RoiType.SKILL_REGION),
        first_skill=_classifier(config, RoiType.FIRST_SKILL),
    )


def _close(classifiers: ClassifierSet) -> None:
    for c in (classifiers.appearance, classifiers.skill_region, classifiers.first_skill):
        if isinstance(c, SubprocessClassifier):
            c.close()


def cmd_detect(args, config: PipelineConfig) -> int:
    detector = config.detector()

    def run(path):
        image = read_png(path)
        found = detector(image)
        return {
            "file": str(path),
            "width": image.width,
            "height": image.height,
            "detections": [_detection_json(d, found.frame.scale) for d in found.detections],
        }

    emit({"schema": SCHEMA, "frames": ordered_map(run, args.frames, config.runtime.jobs)}, args.output)
    return 0


def _recognizer(config: PipelineConfig, classifiers: ClassifierSet):
    detector = config.detector()
    params = config.recognition_params()

    def run(path):
        image = read_png(path)
        found = detector(image)
        recognitions = recognize_frame(found.frame.image, found.detections, classifiers, params)
        return image, found, recognitions

    return run


def _recognition_json(rec: HeroRecognition, scale: float) -> dict:
    out = _detection_json(rec.detection, scale)
    r = rec.result
    out["hero"] = {"label": r.label, "confidence": float(r.confidence), "source": r.source}
    if rec.leading:
        out["leading"] = True
        out["parts"] = [
            {"label": p.label, "confidence": float(p.confidence), "source": p.source}
            for p in rec.parts
        ]
        to_source = (lambda rect: rect) if scale == 1.0 else (lambda rect: rect.scale(1.0 / scale))
        for key in ("skill_region", "first_skill"):
            rect = getattr(rec, key)
            out[key] = None if rect is None else list(to_source(rect).as_tuple())
    return out


def cmd_recognize(args, config: PipelineConfig) -> int:
    classifiers = load_classifiers(config)
    try:
        run = _recognizer(config, classifiers)

        def frame_json(path):
            image, found, recognitions = run(path)
            return {
                "file": str(path),
                "width": image.width,
                "height": image.height,
                "heroes": [_recognition_json(r, found.frame.scale) for r in recognitions],
            }

        frames = ordered_map(frame_json, args.frames, config.runtime.jobs)
    finally:
        _close(classifiers)
    emit({"schema": SCHEMA, "frames": frames}, args.output)
    return 0


def cmd_video_summary(args, config: PipelineConfig) -> int:
    files = frame_files(args.directory)
    if not files:
        raise ValueError(f"no frames in {args.directory}")
    stride = args.stride or config.dataset.every_n_frames
    sampled = files[::stride]
    classifiers = load_classifiers(config)
    try:
        run = _recognizer(config, classifiers)
        per_frame = ordered_map(lambda p: run(p)[2], sampled, config.runtime.jobs)
    finally:
        _close(classifiers)
    summary = accumulate_video(per_frame)
    selected = select_heroes(summary)
    emit(
        {
            "schema": SCHEMA,
            "frames_sampled": len(sampled),
            "stride": stride,
            "summary": summary.to_json(),
            "selected": {camp.value: names for camp, names in selected.items()},
        },
        args.output,
    )
    return 0


def cmd_overlay(args, config: PipelineConfig) -> int:
    if not args.output:
        raise ConfigError("overlay needs -o/--output for the PNG")
    frame = Path(args.frame)
    image = read_png(frame)
    payload = json.loads(Path(args.detections).read_text(encoding="utf-8"))
    entry = pick_frame_entry(payload, frame, (image.width, image.height))
    write_png(draw_overlay(image, boxes_of(entry)), args.output)
    return 0


def cmd_bench(args, config: PipelineConfig) -> int:
    emit(bench_corpus(args.corpus, config.detector()), args.output)
    return 0


def cmd_calibrate(args, config: PipelineConfig) -> int:
    emit(calibrate_corpus(args.corpus, config.detector()), args.output)
    return 0


def parse_dims(text: str) -> List[tuple]:
    """`"1280x720,1920x1080"` -> `[(1280, 720), (1920, 1080)]`."""
    dims = []
    for part in text.split(","):
        try:
            w, h = (int(v) for v in part.lower().split("x"))
        except ValueError as e:
            raise ValueError(f"bad frame size {part!r}, expected WIDTHxHEIGHT") from e
        dims.append((w, h))
    return dims


def cmd_render_corpus(args, config: PipelineConfig) -> int:
    kwargs = {}
    if args.dims:
        kwargs["dims"] = parse_dims(args.dims)
    path = render_corpus(
        args.out_dir,
        args.count,
        seed=args.seed,
        max_bars=args.max_bars,
        empty_probability=args.empty_probability,
        jobs=config.runtime.jobs,
        **kwargs,
    )
    emit({"schema": SCHEMA, "manifest": str(path), "count": args.count}, args.output)
    return 0


def cmd_extract_samples(args, config: PipelineConfig) -> int:
    files = frame_files(args.directory)
    if not files:
        raise ValueError(f"no frames in {args.directory}")
    records = extract_leading_samples(
        files,
        args.label,
        args.out_dir,
        detector=config.detector(),
        window=config.center_window(),
        every_n=args.every_n_frames or config.dataset.every_n_frames,
        jobs=config.runtime.jobs,
        r_min=config.roi.r_min,
        r_max=config.roi.r_max,
    )
    counts = Counter(r.roi_type.value for r in records)
    emit({"schema": SCHEMA, "samples": len(records), "by_roi_type": dict(counts)}, args.output)
    return 0


def _labelled_crops(directories: Sequence[str], roi: RoiType):
    crops = []
    for directory in directories:
        for record in load_samples(directory):
            if record.roi_type is roi:
                crops.append((read_png(Path(directory) / record.file), record.label))
    return crops


def cmd_train_reference(args, config: PipelineConfig) -> int:
    roi = RoiType(args.roi_type)
    crops = _labelled_crops(args.sample_dirs, roi)
    if not crops:
        raise ValueError(f"no {roi.value} samples in {', '.join(args.sample_dirs)}")
    if args.no_split:
        train, test = crops, []
    else:
        train, test = split_corpus(
            crops,
            config.dataset.train_fraction,
            config.dataset.seed,
            label_of=lambda c: c[1],
        )
    model = train_reference(train, roi_type=roi.value)
    save_reference(model, args.output_model)
    report = evaluate_classifier(model, test).to_json() if test else None
    emit(
        {
            "schema": SCHEMA,
            "model": str(args.output_model),
            "roi_type": roi.value,
            "labels": len(model.labels),
            "classifier": summary(model),
            "train": len(train),
            "test": len(test),
            "evaluation": report,
        },
        args.output,
    )
    return 0


def cmd_export_template(args, config: PipelineConfig) -> int:
    image_path, mask_path = save_template(config.template(), args.out_dir)
    emit({"schema": SCHEMA, "template": str(image_path), "mask": str(mask_path)}, args.output)
    return 0
