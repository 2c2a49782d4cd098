import jax.numpy as jnp
from equinox import filter_jit
from jax import lax

from ._raster import MatchMap


def _running_max(values, radius, axis):
    k = 2 * radius + 1
    n = values.shape[axis]
    pad = [(0, 0)] * values.ndim
    pad[axis] = (radius, radius)
    # -inf padding shrinks the window at borders
    x = jnp.pad(values, pad, constant_values=-jnp.inf)
    span = 1
    # doubling: x[i] becomes the max over [i, i + span)
    while 2 * span <= k:
        size = x.shape[axis]
        x = jnp.maximum(
            lax.slice_in_dim(x, 0, size - span, axis=axis),
            lax.slice_in_dim(x, span, size, axis=axis),
        )
        span *= 2
    return jnp.maximum(
        lax.slice_in_dim(x, 0, n, axis=axis),
        lax.slice_in_dim(x, k - span, k - span + n, axis=axis),
    )


@filter_jit
def _max_filter(values, radius):
    return _running_max(_running_max(values, radius, 0), radius, 1)


def maximum_filter(match_map: MatchMap, radius: int) -> MatchMap:
    """Square-window maximum filter (grayscale dilation).

    Each output value is the maximum over the `(2 * radius + 1)` square window
    centred on it, with the window clipped at the borders.

    Args:
        match_map (MatchMap): Input field.
        radius (int): Half window size, at least 1.

    Returns:
        MatchMap: Filtered field with the input dimensions.
    """
    radius = int(radius)
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    return MatchMap(_max_filter(match_map.values, radius))
