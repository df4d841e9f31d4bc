"""Exception hierarchy. Every error carries the offending values as attributes."""


class CliffspinError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(CliffspinError, ValueError):
    def __init__(self, expected, got, what="dimension"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} mismatch: expected {expected}, got {got}")


class UnsupportedDimension(CliffspinError, ValueError):
    def __init__(self, value, reason=""):
        self.value = value
        self.reason = reason
        msg = f"unsupported value {value!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ObstructedDimension(CliffspinError):
    """No Gilbert witness can exist; carries the failed dimension inequality."""

    def __init__(self, n, spinor_dim, spinor_dim_minus_two):
        self.n = n
        self.spinor_dim = spinor_dim
        self.spinor_dim_minus_two = spinor_dim_minus_two
        super().__init__(
            f"n={n} is obstructed: dim R_n = {spinor_dim} < "
            f"2 * dim R_(n-2) = {2 * spinor_dim_minus_two}"
        )


class MaxDimensionExceeded(CliffspinError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"matrix side {size} exceeds the configured limit {limit} (CSL_MAX_DIM)")


class ZeroVectorError(CliffspinError, ValueError):
    pass


class QuadratureError(CliffspinError, RuntimeError):
    pass
