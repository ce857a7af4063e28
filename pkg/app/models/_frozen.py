import numpy as np


def frozen_array(values, dtype=float) -> np.ndarray:
    """Copy `values` into a read-only ndarray so frozen dataclasses stay immutable."""
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array
