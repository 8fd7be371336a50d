"""Spectral propagation kernels and hologram back-propagation.

Three dispersion relations are supported:

* ``OneWay``: angular spectrum, ``exp(+j z sqrt(k^2 - kx^2 - ky^2))``.
* ``Monostatic``: co-located transmitter/receiver, round-trip dispersion
  ``exp(-j z sqrt(4k^2 - kx^2 - ky^2))``. Positive ``z`` with this kernel
  back-projects toward the object; forward simulation uses ``-z``.
* ``Fresnel``: paraxial ``exp(+j k z) exp(-j z (kx^2 + ky^2) / (2k))``.

No padding is done here; callers that want linear rather than circular
convolution pad the grid themselves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from holorecon.exceptions import DegenerateInputError
from holorecon.grid import ComplexField, ScalarGrid, dft2d, idft2d, spatial_frequencies


class KernelVariant(str, enum.Enum):
    ONE_WAY = "OneWay"
    MONOSTATIC = "Monostatic"
    FRESNEL = "Fresnel"


class EvanescentPolicy(str, enum.Enum):
    ZERO = "Zero"
    DECAY = "Decay"


@dataclass(frozen=True)
class KernelMode:
    variant: KernelVariant = KernelVariant.ONE_WAY
    evanescent_policy: EvanescentPolicy = EvanescentPolicy.ZERO

    def __post_init__(self):
        object.__setattr__(self, "variant", KernelVariant(self.variant))
        object.__setattr__(self, "evanescent_policy", EvanescentPolicy(self.evanescent_policy))

    @classmethod
    def coerce(cls, mode) -> "KernelMode":
        """Accept a KernelMode, a variant, or a variant name such as ``"OneWay"``."""
        if isinstance(mode, KernelMode):
            return mode
        if mode is None:
            return cls()
        return cls(KernelVariant(mode))


@dataclass(frozen=True, eq=False)
class PropagationKernel:
    values: np.ndarray
    z: float
    mode: KernelMode
    k: float


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


def make_kernel(nx, ny, pitch, wavelength, medium_index, z, mode=None) -> PropagationKernel:
    """Transfer function sampled on the ``(ny, nx)`` DFT frequency grid."""
    mode = KernelMode.coerce(mode)
    pitch = _finite("pitch", pitch)
    wavelength = _finite("wavelength", wavelength)
    medium_index = _finite("medium_index", medium_index)
    z = _finite("z", z)
    if pitch <= 0 or wavelength <= 0:
        raise ValueError("pitch and wavelength must be > 0")
    if medium_index < 1:
        raise ValueError(f"medium_index must be >= 1, got {medium_index}")

    k = 2.0 * math.pi * medium_index / wavelength
    kx = spatial_frequencies(nx, pitch)
    ky = spatial_frequencies(ny, pitch)
    kr2 = ky[:, None] ** 2 + kx[None, :] ** 2

    if mode.variant is KernelVariant.FRESNEL:
        values = np.exp(1j * k * z) * np.exp(-1j * z * kr2 / (2.0 * k))
        return PropagationKernel(values, z, mode, k)

    if mode.variant is KernelVariant.MONOSTATIC:
        bound, sign = 4.0 * k * k, -1.0
    else:
        bound, sign = k * k, 1.0

    arg = bound - kr2
    propagating = arg >= 0
    kz = np.sqrt(np.where(propagating, arg, 0.0))
    values = np.where(propagating, np.exp(sign * 1j * z * kz), 0.0 + 0.0j)
    if mode.evanescent_policy is EvanescentPolicy.DECAY:
        decay = np.sqrt(np.where(propagating, 0.0, -arg))
        values = np.where(propagating, values, np.exp(-abs(z) * decay))
    return PropagationKernel(values, z, mode, k)


def propagate(field: ComplexField, z, mode=None) -> ComplexField:
    kernel = make_kernel(field.nx, field.ny, field.pitch, field.wavelength, field.medium_index, z, mode)
    spectrum = dft2d(field)
    return idft2d(spectrum.with_data(spectrum.data * kernel.values))


def reconstruct(hologram: ScalarGrid, z, wavelength=None, medium_index=None, mode=None, dc_suppress=True) -> ComplexField:
    """Back-propagate a real hologram to the slice at depth ``z`` below the scan plane.

    ``wavelength`` and ``medium_index`` default to the hologram's own wave
    context.
    """
    mode = KernelMode.coerce(mode)
    z = _finite("z", z)
    if z <= 0:
        raise ValueError(f"reconstruction depth must be > 0, got {z}")
    data = np.asarray(hologram.data, dtype=np.float64)
    if dc_suppress:
        data = data - data.mean()
    if not np.any(data):
        raise DegenerateInputError("hologram carries no signal after DC suppression"
                                   if dc_suppress else "hologram is identically zero")
    field = hologram.with_data(data).to_complex(wavelength, medium_index)
    distance = z if mode.variant is KernelVariant.MONOSTATIC else -z
    return propagate(field, distance, mode)


def focus_search(hologram: ScalarGrid, z_min, z_max, steps, wavelength=None, medium_index=None,
                 mode=None, dc_suppress=True):
    """Scan depths in ``[z_min, z_max]`` and return the sharpest one.

    Sharpness is the peak slice magnitude. Returns ``(z_best, curve)`` where
    ``curve`` is an ``(steps, 2)`` array of ``(z, sharpness)`` rows.
    """
    if not 0 < z_min < z_max:
        raise ValueError(f"need 0 < z_min < z_max, got {z_min}, {z_max}")
    if int(steps) != steps or steps < 2:
        raise ValueError(f"steps must be an integer >= 2, got {steps}")
    depths = np.linspace(z_min, z_max, int(steps))
    sharpness = np.empty_like(depths)
    for i, z in enumerate(depths):
        slice_ = reconstruct(hologram, z, wavelength, medium_index, mode, dc_suppress)
        sharpness[i] = np.abs(slice_.data).max()
    best = int(np.argmax(sharpness))
    return float(depths[best]), np.column_stack([depths, sharpness])
