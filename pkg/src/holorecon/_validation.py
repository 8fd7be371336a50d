"""Input checks shared by the estimator wrappers."""

import math

import numpy as np
from sklearn.utils import check_array

from holorecon.grid import ScalarGrid


def check_holograms(X):
    """Return ``(stack, was_single)`` with ``stack`` of shape ``(n, ny, nx)``.

    Accepts a ScalarGrid, a single 2D array or a 3D stack of holograms.
    """
    if isinstance(X, ScalarGrid):
        X = X.data
    arr = check_array(X, allow_nd=True, dtype=np.float64, ensure_min_samples=1)
    if arr.ndim == 2:
        return arr[None, :, :], True
    if arr.ndim == 3:
        return arr, False
    raise ValueError(f"expected a 2D hologram or a 3D stack of holograms, got {arr.ndim}D input")


def check_positive(name, value, allow_zero=False):
    value = float(value)
    ok = value >= 0 if allow_zero else value > 0
    if not (math.isfinite(value) and ok):
        raise ValueError(f"{name} must be finite and {'>=' if allow_zero else '>'} 0, got {value}")
    return value


def check_grid_shape(estimator, shape):
    if tuple(shape) != estimator.grid_shape_:
        raise ValueError(
            f"{type(estimator).__name__} was fitted on {estimator.grid_shape_[0]}x{estimator.grid_shape_[1]} "
            f"holograms, got {shape[0]}x{shape[1]}"
        )
