import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..camp import Camp
from ..geometry import appearance_rect, skill_region_rect
from ..image import Rect, write_png
from ..matching import TEMPLATE_HEIGHT, TEMPLATE_WIDTH
from ._glyph import GLYPH_SIZE
from ._render import render
from ._scene import (
    BACKGROUNDS,
    BarSpec,
    HudSpec,
    NORMALIZED_HEIGHT,
    normalized_width,
    SceneSpec,
    SpriteSpec,
    too_close,
)


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MANIFEST_FILE = "manifest.json"
FRAMES_DIR = "frames"
DEFAULT_DIMS = ((1280, 720), (960, 720), (1560, 720), (1920, 1080))
DEFAULT_LABELS = tuple(f"hero{i:02d}" for i in range(20))
MAX_HEROES = 10


class ManifestError(ValueError):
    """Raised for a missing or malformed corpus manifest."""


def _sprite_under(bar: Rect, frame_dims: Tuple[int, int], label: str, occluded: bool):
    crop = appearance_rect(bar, frame_dims)
    pad = (crop.w - GLYPH_SIZE) // 2
    return SpriteSpec(label=label, x=crop.x + pad, y=crop.y + pad, occluded=occluded)


def random_scene(
    rng: np.random.Generator,
    width: int = 1280,
    height: int = 720,
    max_bars: int = MAX_HEROES,
    labels: Sequence[str] = DEFAULT_LABELS,
    empty_probability: float = 0.1,
    leading_probability: float = 0.8,
    leading_label: Optional[str] = None,
) -> SceneSpec:
    """A random scene of up to `max_bars` heroes (at most one self, four friends, five enemies).

    Bars keep clear of each other and of the skill region; each hero glyph
    sits in the appearance crop under its bar. Empty bars appear with
    `empty_probability`, other fills are drawn from [0.05, 1].
    """
    nw = normalized_width(width, height)
    dims = (nw, NORMALIZED_HEIGHT)
    skill = skill_region_rect(dims)
    n = int(rng.integers(0, min(max_bars, MAX_HEROES) + 1))
    camps = []
    if n > 0 and rng.random() < leading_probability:
        camps.append(Camp.SELF)
    pool = [Camp.FRIEND] * 4 + [Camp.ENEMY] * 5
    rng.shuffle(pool)
    camps += pool[: n - len(camps)]

    bars, sprites, placed = [], [], []
    hud = None
    for camp in camps:
        for _ in range(200):
            if camp is Camp.SELF:
                x = nw // 2 - TEMPLATE_WIDTH // 2 + int(rng.integers(-80, 81))
                y = int(rng.integers(200, 321))
            else:
                x = int(rng.integers(0, nw - TEMPLATE_WIDTH + 1))
                y = int(rng.integers(0, NORMALIZED_HEIGHT - TEMPLATE_HEIGHT + 1))
            rect = Rect(x, y, TEMPLATE_WIDTH, TEMPLATE_HEIGHT)
            if rect.intersect(skill) is None and not any(too_close(rect, p) for p in placed):
                break
        else:
            logger.debug("no room for a %s bar in a %dx%d frame", camp.value, *dims)
            continue
        placed.append(rect)
        fill = 0.0 if rng.random() < empty_probability else round(float(rng.uniform(0.05, 1.0)), 3)
        label = labels[int(rng.integers(len(labels)))]
        if camp is Camp.SELF and leading_label:
            label = leading_label
        bars.append(BarSpec(x=x, y=y, camp=camp, fill=fill, level=int(rng.integers(1, 16))))
        sprites.append(_sprite_under(rect, dims, label, bool(rng.random() < 0.2)))
        if camp is Camp.SELF:
            hud = HudSpec(label=label)
    return SceneSpec(
        width=width,
        height=height,
        bars=tuple(bars),
        sprites=tuple(sprites),
        background=BACKGROUNDS[int(rng.integers(len(BACKGROUNDS)))],
        hud=hud,
        seed=int(rng.integers(2**31)),
    )


def _render_entry(args):
    index, spec, frames_dir = args
    image, truth = render(spec)
    name = f"{index:04d}.png"
    write_png(image, frames_dir / name, atomic=True)
    return {
        "id": f"{index:04d}",
        "file": f"{FRAMES_DIR}/{name}",
        "background": spec.background,
        "seed": spec.seed,
        **truth.to_json(),
    }


def render_corpus(
    out_dir: Union[str, os.PathLike],
    n: int,
    seed: int = 0,
    dims: Sequence[Tuple[int, int]] = DEFAULT_DIMS,
    max_bars: int = MAX_HEROES,
    labels: Sequence[str] = DEFAULT_LABELS,
    empty_probability: float = 0.1,
    jobs: int = 1,
) -> Path:
    """Render `n` random scenes with a ground-truth manifest.

    Writes `frames/NNNN.png` and `manifest.json` under `out_dir`. Scene `i`
    depends only on `seed` and `i`, so the corpus is identical for any
    `jobs`.

    Args:
        out_dir (PathLike): Corpus directory, created if missing.
        n (int): Number of scenes, at least 1.
        seed (int, optional): Corpus seed. Defaults to 0.
        dims (Sequence[Tuple[int, int]], optional): Frame sizes to draw from.
        max_bars (int, optional): Most bars per scene. Defaults to 10.
        labels (Sequence[str], optional): Hero labels to draw from.
        empty_probability (float, optional): Chance of an empty bar.
        jobs (int, optional): Render threads. Defaults to 1.

    Returns:
        Path: The manifest path.
    """
    if n < 1:
        raise ValueError(f"corpus needs at least one scene, got n={n}")
    if len(dims) == 0:
        raise ValueError("dims must not be empty")
    out_dir = Path(out_dir)
    frames_dir = out_dir / FRAMES_DIR
    frames_dir.mkdir(parents=True, exist_ok=True)

    work = []
    for i in range(n):
        rng = np.random.default_rng([seed, i])
        w, h = dims[int(rng.integers(len(dims)))]
        spec = random_scene(rng, w, h, max_bars, labels, empty_probability)
        work.append((i, spec, frames_dir))
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        entries = list(pool.map(_render_entry, work))

    manifest = {"schema": SCHEMA_VERSION, "seed": seed, "count": n, "frames": entries}
    path = out_dir / MANIFEST_FILE
    tmp = path.with_name(f".{MANIFEST_FILE}.tmp")
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    os.replace(tmp, path)
    logger.info("rendered %d scenes into %s", n, out_dir)
    return path


def _check_frame(i: int, entry) -> None:
    if not isinstance(entry, dict):
        raise ManifestError(f"frame {i} is not an object")
    for key in ("file", "width", "height", "bars"):
        if key not in entry:
            raise ManifestError(f"frame {i} has no {key!r}")
    for j, bar in enumerate(entry["bars"]):
        rect = bar.get("rect") if isinstance(bar, dict) else None
        if not isinstance(rect, list) or len(rect) != 4:
            raise ManifestError(f"frame {i} bar {j} has no valid rect")
        if bar.get("camp") not in {c.value for c in Camp}:
            raise ManifestError(f"frame {i} bar {j} has an invalid camp {bar.get('camp')!r}")


def load_manifest(corpus_dir: Union[str, os.PathLike]) -> dict:
    """Read and check a corpus manifest.

    Raises:
        ManifestError: If the manifest is missing, not JSON, of another
            schema version, or has malformed frame entries.
    """
    path = Path(corpus_dir) / MANIFEST_FILE
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ManifestError(f"no manifest at {path}") from e
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ManifestError(f"cannot parse {path}: {e}") from e
    if not isinstance(manifest, dict) or manifest.get("schema") != SCHEMA_VERSION:
        raise ManifestError(f"{path}: expected schema {SCHEMA_VERSION}")
    frames = manifest.get("frames")
    if not isinstance(frames, list):
        raise ManifestError(f"{path}: 'frames' must be a list")
    for i, entry in enumerate(frames):
        _check_frame(i, entry)
    return manifest
