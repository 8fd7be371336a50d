"""Pixel-count-scaled reconstruction errors.

Both losses compare a binary ground-truth mask against a max-normalized
reconstruction magnitude. ``l2_loss`` scales the root-sum-square error by
the total pixel count; ``l2_zero_loss`` keeps only the pixels where the
truth is exactly zero (outside the object) and scales by their number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from holorecon.exceptions import DegenerateInputError
from holorecon.grid import ComplexField, ScalarGrid

ZERO_NORMS = ("count", "sqrt")


@dataclass(frozen=True)
class LossReport:
    l2: float
    l2_zero: float
    n_pixels: int
    n_zero_pixels: int

    def as_row(self):
        return (self.l2, self.l2_zero, self.n_pixels, self.n_zero_pixels)


def _values(grid):
    return np.asarray(grid.data if isinstance(grid, (ScalarGrid, ComplexField)) else grid, dtype=np.float64)


def _pair(orig, rec):
    a, b = _values(orig), _values(rec)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def normalize(grid: ScalarGrid) -> ScalarGrid:
    """Divide by the maximum so the peak becomes exactly 1."""
    peak = grid.data.max()
    if not peak > 0:
        raise DegenerateInputError("cannot normalize a grid without a positive value")
    return grid.with_data(grid.data / peak)


def l2_loss(orig, rec) -> float:
    a, b = _pair(orig, rec)
    return math.sqrt(float(np.sum((a - b) ** 2))) / a.size


def l2_zero_loss(orig, rec, zero_norm: str = "count") -> float:
    """Error on the truth's zero set.

    ``zero_norm="count"`` divides by the number of zero pixels;
    ``"sqrt"`` divides by its square root instead.
    """
    if zero_norm not in ZERO_NORMS:
        raise ValueError(f"zero_norm must be one of {ZERO_NORMS}, got {zero_norm!r}")
    a, b = _pair(orig, rec)
    outside = a == 0
    n0 = int(outside.sum())
    if n0 == 0:
        raise DegenerateInputError("truth has no zero-valued pixels")
    scale = n0 if zero_norm == "count" else math.sqrt(n0)
    return math.sqrt(float(np.sum((a - b)[outside] ** 2))) / scale


def loss_report(truth_mask: ScalarGrid, slice_: ComplexField, zero_norm: str = "count") -> LossReport:
    if (truth_mask.ny, truth_mask.nx) != slice_.data.shape:
        raise ValueError(f"dimension mismatch: mask {truth_mask.ny}x{truth_mask.nx}, "
                         f"slice {slice_.data.shape[0]}x{slice_.data.shape[1]}")
    rec = normalize(ScalarGrid(np.abs(slice_.data), slice_.pitch))
    n_zero = int(np.count_nonzero(truth_mask.data == 0))
    return LossReport(
        l2=l2_loss(truth_mask, rec),
        l2_zero=l2_zero_loss(truth_mask, rec, zero_norm),
        n_pixels=truth_mask.data.size,
        n_zero_pixels=n_zero,
    )
