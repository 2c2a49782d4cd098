import logging
import time
from functools import partial, wraps
from typing import (
    Any,
    Callable,
    Dict,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

import equinox as eqx
import jax

from .base import Functional


T = TypeVar("T")

logger = logging.getLogger(__name__)


def _block(x):
    # dispatch is asynchronous
    for leaf in jax.tree_util.tree_leaves(x):
        if isinstance(leaf, jax.Array):
            leaf.block_until_ready()


class Pipe(eqx.Module):
    """An ordered chain of stages; each stage receives the previous output.

    Attributes:
        funcs (Tuple[Functional, ...]): The stages in run order.
    """

    funcs: Tuple[Functional, ...]

    def __init__(self, funcs: Sequence[Functional]) -> None:
        self.funcs = tuple(funcs)

    def __call__(self, x: Any = None):
        for fn in self.funcs:
            x = fn(x)
        return x

    def timed(self, x: Any = None) -> Tuple[Any, Dict[str, float]]:
        """Run the pipe and measure every stage.

        Args:
            x (Any): Input of the first stage.

        Returns:
            Tuple[Any, Dict[str, float]]: The output and the wall time in
            milliseconds of each stage, keyed by stage name. Repeated names
            are accumulated.
        """
        timings: Dict[str, float] = {}
        for fn in self.funcs:
            start = time.perf_counter()
            x = fn(x)
            _block(x)
            elapsed = (time.perf_counter() - start) * 1e3
            timings[fn.name] = timings.get(fn.name, 0.0) + elapsed
            logger.debug("stage %s took %.2f ms", fn.name, elapsed)
        return x, timings

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.funcs)

    def __getitem__(self, i: Union[int, slice, str]):
        """Index stages by position, slice, or name.

        Raises:
            TypeError: If the index type is not supported.
            ValueError: If no stage has the given name.
        """
        if isinstance(i, int):
            return self.funcs[i]
        elif isinstance(i, slice):
            return Pipe(self.funcs[i])
        elif isinstance(i, str):
            found = [f for f in self.funcs if f.name.lower() == i.lower()]
            if len(found) == 0:
                raise ValueError(f"No stage named {i!r}")
            return found[0] if len(found) == 1 else Pipe(found)
        raise TypeError(f"Indexing with type {type(i)} is not supported")

    def __iter__(self):
        yield from self.funcs

    def __len__(self) -> int:
        return len(self.funcs)

    def __rshift__(self, _next):
        if isinstance(_next, Pipe):
            return Pipe([*self.funcs, *_next])
        if not isinstance(_next, Functional):
            _next = Functional(fn=_next, name=getattr(_next, "__name__", "Stage"))
        return Pipe([*self.funcs, _next])


class Pipeable(Functional):
    """A constant source stage that feeds `value` into a pipe.

    Example:
        >>> from herox import Pipeable
        >>> import herox.pipe_functions as PF
        >>> (Pipeable(image) >> PF.to_grayscale)()
    """

    value: Any

    def __init__(self, value: Any):
        super().__init__(name="Source", fn=None)
        self.value = value

    def __call__(self, *args, **kwargs):
        return self.value


def _stage_name(func, name):
    if name is not None:
        return name
    if hasattr(func, "name"):
        return func.name
    return getattr(func, "__name__", "Stage")


def make_pipe(
    func: Optional[Callable[..., T]] = None, name: str = None
) -> Callable[..., T]:
    """Turn a one-argument function into a pipe stage.

    Args:
        func (Callable): Function to wrap.
        name (str, optional): Stage name. Defaults to the function name.

    Returns:
        Functional: The stage.

    Examples:
        >>> @make_pipe
        ... def invert(img):
        ...     return 255 - img
        >>> (invert >> invert)(img)
    """

    def wrap(func: Callable[..., T]) -> Functional:
        if isinstance(func, Functional) and func.func is not None:
            func = func.func
        return Functional(fn=func, name=_stage_name(func, name))

    return wrap if func is None else wrap(func)


def make_partial_pipe(
    func: Optional[Callable[..., T]] = None, name: str = None
) -> Callable[..., T]:
    """Make a function usable both directly and as a configured pipe stage.

    Called with positional arguments, the function runs immediately.
    Called with keyword arguments only, it returns a `Functional` with
    those keywords bound, ready to be chained with `>>`.

    Args:
        func (Callable): Function whose first parameter is the piped value.
        name (str, optional): Stage name. Defaults to the function name.

    Examples:
        >>> @make_partial_pipe
        ... def scale(img, factor):
        ...     return img * factor
        >>> h = scale(factor=2) >> scale(factor=3)
        >>> h(1)
        6
    """

    def wrap(func: Callable[..., T]) -> Callable:
        if isinstance(func, Functional) and func.func is not None:
            func = func.func
        stage_name = _stage_name(func, name)

        @wraps(func)
        def partial_fn(*args, **kwargs):
            if len(args) != 0:
                return func(*args, **kwargs)
            return Functional(fn=partial(func, **kwargs), name=stage_name)

        return partial_fn

    return wrap if func is None else wrap(func)
