from ._suppress import NmsParams, suppress


__all__ = ["NmsParams", "suppress"]
