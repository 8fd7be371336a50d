"""Sampled 2D grids and the discrete Fourier transforms used by every
propagation kernel.

Arrays are stored row-major with shape ``(ny, nx)``: x is the fast axis.
The forward DFT is unnormalized and the inverse carries the ``1/(nx*ny)``
factor, which is also numpy's default convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

Pitch = Union[float, tuple]


def _square_pitch(pitch: Pitch) -> float:
    if isinstance(pitch, (tuple, list)):
        if len(pitch) != 2:
            raise ValueError(f"pitch must be a scalar or an (x, y) pair, got {pitch!r}")
        px, py = (float(p) for p in pitch)
        if px != py:
            raise ValueError(f"only square pixels are supported, got pitch {px} x {py}")
        pitch = px
    pitch = float(pitch)
    if not math.isfinite(pitch) or pitch <= 0:
        raise ValueError(f"pitch must be finite and > 0, got {pitch}")
    return pitch


def _check_wave(wavelength: Optional[float], medium_index: float) -> None:
    if wavelength is not None and (not math.isfinite(wavelength) or wavelength <= 0):
        raise ValueError(f"wavelength must be finite and > 0, got {wavelength}")
    if not math.isfinite(medium_index) or medium_index < 1:
        raise ValueError(f"medium_index must be finite and >= 1, got {medium_index}")


def _frozen_2d(data, dtype) -> np.ndarray:
    arr = np.array(data, dtype=dtype, copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"grid data must be a non-empty 2D array, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex field sampled on a square-pixel grid, with its wave context.

    ``data`` has shape ``(ny, nx)``. ``wavelength`` is the vacuum wavelength
    in meters; the wavenumber in the medium is ``2*pi*medium_index/wavelength``.
    """

    data: np.ndarray
    pitch: float
    wavelength: float
    medium_index: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "pitch", _square_pitch(self.pitch))
        object.__setattr__(self, "wavelength", float(self.wavelength))
        object.__setattr__(self, "medium_index", float(self.medium_index))
        _check_wave(self.wavelength, self.medium_index)
        object.__setattr__(self, "data", _frozen_2d(self.data, np.complex128))

    @property
    def nx(self) -> int:
        return self.data.shape[1]

    @property
    def ny(self) -> int:
        return self.data.shape[0]

    @property
    def k(self) -> float:
        return 2.0 * math.pi * self.medium_index / self.wavelength

    def with_data(self, data) -> "ComplexField":
        return replace(self, data=data)

    def magnitude(self) -> "ScalarGrid":
        return ScalarGrid(
            np.abs(self.data), self.pitch, wavelength=self.wavelength, medium_index=self.medium_index
        )


@dataclass(frozen=True, eq=False)
class ScalarGrid:
    """Real-valued grid: hologram intensities, masks, magnitude images.

    The wave context is optional here; holograms produced by the simulator
    carry it so that files written from them are self-describing.
    """

    data: np.ndarray
    pitch: float
    wavelength: Optional[float] = None
    medium_index: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "pitch", _square_pitch(self.pitch))
        if self.wavelength is not None:
            object.__setattr__(self, "wavelength", float(self.wavelength))
        object.__setattr__(self, "medium_index", float(self.medium_index))
        _check_wave(self.wavelength, self.medium_index)
        object.__setattr__(self, "data", _frozen_2d(self.data, np.float64))

    @property
    def nx(self) -> int:
        return self.data.shape[1]

    @property
    def ny(self) -> int:
        return self.data.shape[0]

    def with_data(self, data) -> "ScalarGrid":
        return replace(self, data=data)

    def to_complex(self, wavelength: Optional[float] = None, medium_index: Optional[float] = None) -> ComplexField:
        wavelength = self.wavelength if wavelength is None else wavelength
        if wavelength is None:
            raise ValueError("a wavelength is required to turn a real grid into a field")
        medium_index = self.medium_index if medium_index is None else medium_index
        return ComplexField(self.data.astype(np.complex128), self.pitch, wavelength, medium_index)


def dft2d(field: ComplexField) -> ComplexField:
    """Unnormalized forward 2D DFT; metadata is carried through."""
    return field.with_data(np.fft.fft2(field.data))


def idft2d(spectrum: ComplexField) -> ComplexField:
    """Inverse 2D DFT with ``1/(nx*ny)`` normalization."""
    return spectrum.with_data(np.fft.ifft2(spectrum.data))


def spatial_frequencies(n: int, pitch: float) -> np.ndarray:
    """Angular spatial frequencies (rad/m) in standard DFT order.

    >>> spatial_frequencies(4, 0.5) / np.pi
    array([ 0.,  1., -2., -1.])
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    pitch = _square_pitch(pitch)
    return 2.0 * np.pi * np.fft.fftfreq(int(n), d=pitch)
