import json
import logging
import os
import struct
from collections import defaultdict
from typing import Optional, Sequence, Tuple, Union

import jax
import jax.image
import jax.numpy as jnp
import numpy as np
from equinox import filter_jit, filter_vmap
from jaxtyping import Array, Float

from ..image import RasterImage, to_grayscale
from ._base import ClassifierError, HeroClassifier, Prediction


logger = logging.getLogger(__name__)

FEATURE_SIDE = 32
FEATURE_DIMS = FEATURE_SIDE * FEATURE_SIDE
MODEL_MAGIC = b"HRXC"
MODEL_VERSION = 1


@filter_jit
def _features(plane):
    small = jax.image.resize(
        plane.astype(jnp.float32), (FEATURE_SIDE, FEATURE_SIDE), method="linear"
    ).reshape(-1)
    centred = small - jnp.mean(small)
    return centred / (jnp.std(centred) + 1e-6)


def reference_features(image: RasterImage) -> Float[Array, " 1024"]:
    """32x32 gray downsample standardised to zero mean and unit variance."""
    return _features(to_grayscale(image).plane())


@filter_jit
def _softmax_neg_distance(feature, centroids, temperature):
    d = jnp.sqrt(jnp.sum((centroids - feature[None, :]) ** 2, axis=1))
    return jax.nn.softmax(-d / temperature)


class ReferenceClassifier(HeroClassifier):
    """Nearest-centroid classifier on standardised 32x32 gray features.

    Confidence is a softmax over negative Euclidean distances to the label
    centroids with temperature `temperature`.

    Attributes:
        labels (Tuple[str, ...]): Hero names, one per centroid row.
        centroids (Float[Array, "k 1024"]): Mean feature of each label.
        temperature (float): Softmax temperature.
        roi_type (str): Crop type the model was trained on.
    """

    labels: Tuple[str, ...]
    centroids: Float[Array, "k 1024"]
    temperature: float
    roi_type: str

    def __init__(self, labels, centroids, temperature: float = 2.0, roi_type: str = ""):
        super().__init__(name="ReferenceClassifier")
        centroids = jnp.asarray(centroids, dtype=jnp.float32)
        if centroids.ndim != 2 or centroids.shape != (len(labels), FEATURE_DIMS):
            raise ValueError(
                f"centroids must be ({len(labels)}, {FEATURE_DIMS}), got {centroids.shape}"
            )
        if temperature <= 0:
            raise ValueError(f"temperature must be positive, got {temperature}")
        self.labels = tuple(labels)
        self.centroids = centroids
        self.temperature = float(temperature)
        self.roi_type = str(roi_type)

    def _predict(self, image: RasterImage) -> Prediction:
        probs = np.asarray(
            _softmax_neg_distance(reference_features(image), self.centroids, self.temperature)
        )
        return tuple(zip(self.labels, (float(p) for p in probs)))

    def _summary(self):
        return {
            "labels": list(self.labels),
            "roi_type": self.roi_type,
            "temperature": self.temperature,
        }

    def __repr__(self):
        return f"ReferenceClassifier(labels={len(self.labels)}, roi_type={self.roi_type!r})"


def batch_features(images: Sequence[RasterImage]) -> Float[Array, "n 1024"]:
    """Features of equally sized crops, vectorised."""
    planes = jnp.stack([to_grayscale(img).plane() for img in images])
    return filter_vmap(_features)(planes)


def train_reference(
    samples: Sequence[Tuple[RasterImage, str]],
    labels: Optional[Sequence[str]] = None,
    temperature: float = 2.0,
    roi_type: str = "",
) -> ReferenceClassifier:
    """Fit label centroids from labelled crops.

    Args:
        samples (Sequence[Tuple[RasterImage, str]]): `(crop, label)` pairs.
        labels (Sequence[str], optional): Labels that must be covered. Defaults
            to the labels present in `samples`.
        temperature (float, optional): Softmax temperature. Defaults to 2.0.
        roi_type (str, optional): Crop type, stored in the model.

    Returns:
        ReferenceClassifier: One centroid per label, labels sorted.

    Raises:
        ValueError: If there are no samples or a required label has none.
    """
    if len(samples) == 0:
        raise ValueError("train_reference needs at least one sample")
    grouped = defaultdict(list)
    for image, label in samples:
        grouped[str(label)].append(image)
    if labels is not None:
        absent = sorted(set(map(str, labels)) - set(grouped))
        if absent:
            raise ValueError(f"no samples for labels: {', '.join(absent)}")
    names = sorted(grouped)
    centroids = []
    for name in names:
        # crops of one label may differ in size; equal sizes are batched together
        by_size = defaultdict(list)
        for img in grouped[name]:
            by_size[(img.height, img.width)].append(img)
        feats = jnp.concatenate([batch_features(group) for group in by_size.values()])
        centroids.append(jnp.mean(feats, axis=0))
        logger.debug("label %s: %d samples", name, len(grouped[name]))
    return ReferenceClassifier(names, jnp.stack(centroids), temperature, roi_type)


def save_reference(model: ReferenceClassifier, path: Union[str, os.PathLike]) -> None:
    """Write a model file.

    Layout: 4-byte magic `HRXC`, little-endian uint32 header length, UTF-8
    JSON header `{version, labels, feature_dims, temperature, roi_type}`,
    then the centroid matrix as little-endian float32, row-major.
    """
    header = json.dumps(
        {
            "version": MODEL_VERSION,
            "labels": list(model.labels),
            "feature_dims": [FEATURE_SIDE, FEATURE_SIDE],
            "temperature": model.temperature,
            "roi_type": model.roi_type,
        },
        sort_keys=True,
    ).encode("utf-8")
    body = np.asarray(model.centroids, dtype="<f4").tobytes(order="C")
    with open(path, "wb") as f:
        f.write(MODEL_MAGIC)
        f.write(struct.pack("<I", len(header)))
        f.write(header)
        f.write(body)


def load_reference(path: Union[str, os.PathLike]) -> ReferenceClassifier:
    """Read a model file written by `save_reference`.

    Raises:
        ClassifierError: If the file is missing, truncated or of another version.
    """
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise ClassifierError(f"cannot read model {path}: {e}") from e
    if data[:4] != MODEL_MAGIC or len(data) < 8:
        raise ClassifierError(f"{path} is not a reference model file")
    (size,) = struct.unpack("<I", data[4:8])
    try:
        header = json.loads(data[8 : 8 + size].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ClassifierError(f"{path}: corrupt header: {e}") from e
    if header.get("version") != MODEL_VERSION:
        raise ClassifierError(f"{path}: unsupported model version {header.get('version')}")
    side_h, side_w = header["feature_dims"]
    labels = header["labels"]
    expected = len(labels) * side_h * side_w * 4
    body = data[8 + size :]
    if len(body) != expected:
        raise ClassifierError(f"{path}: expected {expected} centroid bytes, found {len(body)}")
    centroids = np.frombuffer(body, dtype="<f4").reshape(len(labels), side_h * side_w)
    return ReferenceClassifier(
        labels, centroids, header.get("temperature", 2.0), header.get("roi_type", "")
    )
