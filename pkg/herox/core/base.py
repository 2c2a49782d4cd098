from typing import Callable, Optional, TypeVar

import equinox as eqx


T = TypeVar("T")


class Functional(eqx.Module):
    """A named pipeline stage."""

    _name: str
    _fn: Callable[..., T]

    def __init__(
        self,
        fn: Optional[Callable[..., T]] = None,
        name: str = "Stage",
    ):
        """Wrap a callable as a pipeline stage.

        Args:
            fn (Optional[Callable]): Callable run by the stage.
            name (str, optional): Name of the stage. Defaults to "Stage".
        """
        super().__init__()
        self._name = name
        self._fn = fn

    @property
    def name(self):
        """Name of the stage."""
        return self._name

    @property
    def func(self):
        """The wrapped callable."""
        return self._fn

    def __call__(self, *args, **kwargs):
        if self._fn is None:
            raise ValueError(f"Stage {self._name!r} has no callable to run")
        return self._fn(*args, **kwargs)

    def __rshift__(self, _next: Callable):
        """Chain this stage with the next one.

        Args:
            _next (Callable): The next stage, or any callable.

        Returns:
            Pipe: A pipe running this stage then `_next`.
        """
        from .pipe import Pipe

        if isinstance(_next, Pipe):
            return Pipe([self, *_next])
        if not isinstance(_next, Functional):
            _next = Functional(fn=_next, name=getattr(_next, "__name__", "Stage"))
        return Pipe([self, _next])


class StateFunc(Functional):
    """Base class for fitted state (classifiers, summaries).

    Subclasses implement `_predict` and optionally `_summary`; they are
    queried through `herox.core.predict` and `herox.core.summary`.
    """

    def __init__(self, name: str = "State"):
        super().__init__(fn=None, name=name)

    def _summary(self):
        return repr(self)

    def _predict(self, *args, **kwargs):
        raise NotImplementedError(f"{type(self).__name__} does not predict")

    def __call__(self, *args, **kwargs):
        return self._predict(*args, **kwargs)


def predict(x, state: StateFunc):
    """Run a fitted state on `x`."""
    return state._predict(x)


def summary(state: StateFunc):
    """Describe a fitted state; plain data for states that define `_summary`."""
    return state._summary()
