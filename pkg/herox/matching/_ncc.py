import jax.numpy as jnp
from equinox import filter_jit
from jax.scipy.signal import fftconvolve

from ..image import MatchMap, RasterImage, to_grayscale
from ._template import BloodBarTemplate


# windows whose masked per-pixel variance is below this are treated as flat
_FLAT_VARIANCE = 0.25


def _integral(values):
    # uint32 wraps, box differences stay exact while a box sum fits in 32 bits
    out = values.astype(jnp.uint32)
    out = jnp.cumsum(jnp.cumsum(out, axis=0, dtype=jnp.uint32), axis=1, dtype=jnp.uint32)
    return jnp.pad(out, ((1, 0), (1, 0)))


def _box_sums(integral, box, out_h, out_w):
    x, y, w, h = box
    return (
        integral[y + h : y + h + out_h, x + w : x + w + out_w]
        - integral[y : y + out_h, x + w : x + w + out_w]
        - integral[y + h : y + h + out_h, x : x + out_w]
        + integral[y : y + out_h, x : x + out_w]
    )


def _masked_sums(integral, dims, holes, out_h, out_w):
    total = _box_sums(integral, (0, 0) + dims, out_h, out_w)
    for hole in holes:
        total = total - _box_sums(integral, hole, out_h, out_w)
    return total


@filter_jit
def _masked_ncc(frame, weights, dims, holes, n):
    out_h = frame.shape[0] - dims[1] + 1
    out_w = frame.shape[1] - dims[0] + 1
    centred = frame.astype(jnp.int32) - 128
    # weights sum to zero over the mask, so the frame offset drops out
    cross = fftconvolve(centred.astype(jnp.float32), weights[::-1, ::-1], mode="valid")
    s1 = _masked_sums(_integral(frame), dims, holes, out_h, out_w)
    s2 = _masked_sums(_integral(centred * centred), dims, holes, out_h, out_w)
    s1 = s1.astype(jnp.float32) - 128.0 * n
    s2 = s2.astype(jnp.float32)
    var_n = jnp.maximum(s2 - s1 * s1 / n, 0.0)
    t_norm = jnp.sqrt(jnp.sum(weights * weights))
    flat = var_n <= _FLAT_VARIANCE * n
    denom = jnp.where(flat, 1.0, jnp.sqrt(var_n) * t_norm)
    return jnp.where(flat, 0.0, jnp.clip(cross / denom, -1.0, 1.0))


def masked_match(frame: RasterImage, template: BloodBarTemplate) -> MatchMap:
    """Masked normalized cross-correlation of a template over a gray frame.

    The value at `(x, y)` is the Pearson correlation between the frame window
    whose top-left corner is `(x, y)` and the template, over mask pixels only.
    Windows with (near) zero variance score 0.

    The cross term is an FFT correlation; window sums and sums of squares come
    from integral images as the template box minus the mask's holes.

    Args:
        frame (RasterImage): Gray frame at the normalized height. RGB frames
            are converted first.
        template (BloodBarTemplate): Template and mask.

    Returns:
        MatchMap: `(frame_h - tmpl_h + 1) x (frame_w - tmpl_w + 1)` values in [-1, 1].

    Raises:
        ValueError: If the frame is smaller than the template.
    """
    if frame.width < template.width or frame.height < template.height:
        raise ValueError(
            f"frame {frame.width}x{frame.height} is smaller than template "
            f"{template.width}x{template.height}"
        )
    gray = to_grayscale(frame).plane()
    holes = tuple(h.as_tuple() for h in template.holes)
    return MatchMap(
        _masked_ncc(gray, template.weights(), template.dims, holes, float(template.n_mask))
    )
