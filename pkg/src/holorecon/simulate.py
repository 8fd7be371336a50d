"""Synthetic in-line holograms of a sphere.

Two scalar forward models are available. ``PointScatterer`` sums a unit
plane reference wave with a spherical wave radiated from the sphere centre.
``DiskDiffraction`` propagates an opaque disk (the sphere's cross-section)
with the same spectral kernels used for reconstruction, so the two are
exact inverses of each other on the propagating band.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from holorecon.grid import ComplexField, ScalarGrid
from holorecon.propagation import KernelMode, KernelVariant, propagate


class ForwardModel(str, enum.Enum):
    POINT_SCATTERER = "PointScatterer"
    DISK_DIFFRACTION = "DiskDiffraction"


def rayleigh_strength(radius, wavelength, refraction_index, medium_index=1.0) -> float:
    """Scattering amplitude ``4*pi*(r/lambda)^3 * |(m^2-1)/(m^2+2)|``.

    ``lambda`` is the wavelength in the medium and ``m`` the relative index.
    """
    m = refraction_index / medium_index
    lam = wavelength / medium_index
    return 4.0 * math.pi * (radius / lam) ** 3 * abs((m * m - 1.0) / (m * m + 2.0))


@dataclass(frozen=True)
class SphereSpec:
    center: Tuple[float, float, float]
    radius: float
    refraction_index: float = 1.59
    scattering_strength: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if len(self.center) != 3:
            raise ValueError("sphere center must be (x, y, z)")
        if not self.radius > 0:
            raise ValueError(f"sphere radius must be > 0, got {self.radius}")
        if not self.center[2] > 0:
            raise ValueError(f"sphere must sit in front of the scan plane (z > 0), got z={self.center[2]}")
        if not self.scattering_strength >= 0:
            raise ValueError(f"scattering_strength must be >= 0, got {self.scattering_strength}")


@dataclass(frozen=True)
class DetectorSpec:
    """Scan-plane sampling. ``origin`` is the (x, y) position of pixel (0, 0)."""

    nx: int
    ny: int
    pitch: float
    origin: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 1 or self.ny < 1:
            raise ValueError(f"detector dimensions must be positive integers, got {self.nx}x{self.ny}")
        object.__setattr__(self, "nx", int(self.nx))
        object.__setattr__(self, "ny", int(self.ny))
        if not (math.isfinite(self.pitch) and self.pitch > 0):
            raise ValueError(f"detector pitch must be > 0, got {self.pitch}")
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))

    @classmethod
    def centered_on(cls, nx, ny, pitch, x, y) -> "DetectorSpec":
        """Detector whose pixel ``(nx // 2, ny // 2)`` sits exactly over ``(x, y)``."""
        return cls(nx, ny, pitch, (x - (nx // 2) * pitch, y - (ny // 2) * pitch))

    def grown(self, s: int) -> "DetectorSpec":
        """Add ``s`` pixels per dimension around the same centre; odd extras go high."""
        lo = s // 2
        return DetectorSpec(self.nx + s, self.ny + s, self.pitch,
                            (self.origin[0] - lo * self.pitch, self.origin[1] - lo * self.pitch))

    def coordinates(self):
        xs = self.origin[0] + self.pitch * np.arange(self.nx)
        ys = self.origin[1] + self.pitch * np.arange(self.ny)
        return xs, ys


@dataclass(frozen=True)
class Scenario:
    wavelength: float
    medium_index: float
    sphere: SphereSpec
    detector: DetectorSpec
    kernel_mode: KernelMode = field(default_factory=KernelMode)
    forward_model: ForwardModel = ForwardModel.POINT_SCATTERER

    def __post_init__(self):
        object.__setattr__(self, "kernel_mode", KernelMode.coerce(self.kernel_mode))
        object.__setattr__(self, "forward_model", ForwardModel(self.forward_model))
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise ValueError(f"wavelength must be > 0, got {self.wavelength}")
        if not (math.isfinite(self.medium_index) and self.medium_index >= 1):
            raise ValueError(f"medium_index must be >= 1, got {self.medium_index}")
        if self.forward_model is ForwardModel.DISK_DIFFRACTION:
            _check_disk_inside(self.detector, self.sphere)

    @property
    def k(self) -> float:
        return 2.0 * math.pi * self.medium_index / self.wavelength

    def with_detector(self, detector: DetectorSpec) -> "Scenario":
        return Scenario(self.wavelength, self.medium_index, self.sphere, detector,
                        self.kernel_mode, self.forward_model)


def _check_disk_inside(det: DetectorSpec, sphere: SphereSpec):
    cx, cy, _ = sphere.center
    x0, y0 = det.origin
    x1 = x0 + (det.nx - 1) * det.pitch
    y1 = y0 + (det.ny - 1) * det.pitch
    r = sphere.radius
    if cx - r < x0 or cx + r > x1 or cy - r < y0 or cy + r > y1:
        raise ValueError("disk of the sphere cross-section does not fit inside the detector grid")


def _snap(v, tol=1e-9):
    r = round(v)
    return float(r) if abs(v - r) < tol else v


def disk_mask(nx, ny, pitch, center, radius) -> ScalarGrid:
    """Binary mask, 1 where the pixel centre lies within ``radius`` of ``center``.

    ``center`` is given in pixel-grid coordinates scaled by ``pitch``, i.e.
    pixel ``(i, j)`` sits at ``(i * pitch, j * pitch)``. Distances are
    compared in pixel units; centres within 1e-9 px of a pixel are snapped
    onto it so that round-off cannot break the mask's symmetry.
    """
    if not radius > 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    ci, cj = (_snap(c / pitch) for c in center)
    rr = (radius / pitch) ** 2 * (1 + 1e-12)
    xs = np.arange(nx) - ci
    ys = np.arange(ny) - cj
    inside = ys[:, None] ** 2 + xs[None, :] ** 2 <= rr
    return ScalarGrid(inside.astype(np.float64), pitch)


def truth_mask(sc: Scenario) -> ScalarGrid:
    """Sphere cross-section on the scenario's detector grid."""
    det = sc.detector
    cx, cy, _ = sc.sphere.center
    mask = disk_mask(det.nx, det.ny, det.pitch, (cx - det.origin[0], cy - det.origin[1]), sc.sphere.radius)
    return ScalarGrid(mask.data, det.pitch, wavelength=sc.wavelength, medium_index=sc.medium_index)


def spherical_wave(detector: DetectorSpec, wavelength, source, medium_index=1.0, converging=False) -> ComplexField:
    """``exp(+-j k R) / (k R)`` on the detector, from a point at ``source`` (x, y, z)."""
    xs, ys = detector.coordinates()
    sx, sy, sz = source
    r = np.sqrt((ys[:, None] - sy) ** 2 + (xs[None, :] - sx) ** 2 + sz * sz)
    if np.any(r == 0):
        raise ValueError("source lies on the detector plane")
    k = 2.0 * math.pi * medium_index / wavelength
    sign = -1.0 if converging else 1.0
    return ComplexField(np.exp(sign * 1j * k * r) / (k * r), detector.pitch, wavelength, medium_index)


def simulate_point_hologram(sc: Scenario) -> ScalarGrid:
    if sc.forward_model is not ForwardModel.POINT_SCATTERER:
        raise ValueError("scenario is not configured for the PointScatterer model")
    xs, ys = sc.detector.coordinates()
    cx, cy, cz = sc.sphere.center
    r = np.sqrt((ys[:, None] - cy) ** 2 + (xs[None, :] - cx) ** 2 + cz * cz)
    if np.any(r == 0):
        raise ValueError("scatterer lies on the scan plane")
    k = sc.k
    s = sc.sphere.scattering_strength
    if sc.kernel_mode.variant is KernelVariant.MONOSTATIC:
        scattered = s * np.exp(2j * k * r) / (k * r) ** 2
    else:
        scattered = s * np.exp(1j * k * r) / (k * r)
    return ScalarGrid(np.abs(1.0 + scattered) ** 2, sc.detector.pitch,
                      wavelength=sc.wavelength, medium_index=sc.medium_index)


def simulate_disk_hologram(sc: Scenario, contrast: float = 1.0) -> ScalarGrid:
    """Intensity of an absorbing disk after propagation to the scan plane.

    ``contrast`` is the amplitude removed inside the disk (1 means opaque).
    """
    if sc.forward_model is not ForwardModel.DISK_DIFFRACTION:
        raise ValueError("scenario is not configured for the DiskDiffraction model")
    _check_disk_inside(sc.detector, sc.sphere)
    mask = truth_mask(sc).data
    obj = ComplexField(1.0 - contrast * mask, sc.detector.pitch, sc.wavelength, sc.medium_index)
    z = sc.sphere.center[2]
    # Monostatic kernels use the conjugate exponent for forward propagation.
    distance = -z if sc.kernel_mode.variant is KernelVariant.MONOSTATIC else z
    out = propagate(obj, distance, sc.kernel_mode)
    return ScalarGrid(np.abs(out.data) ** 2, sc.detector.pitch,
                      wavelength=sc.wavelength, medium_index=sc.medium_index)


def simulate(sc: Scenario) -> ScalarGrid:
    if sc.forward_model is ForwardModel.DISK_DIFFRACTION:
        return simulate_disk_hologram(sc)
    return simulate_point_hologram(sc)


def _preset(wavelength, center, radius, nx, ny, pitch, refraction_index=1.59, medium_index=1.0):
    sphere = SphereSpec(center, radius, refraction_index,
                        rayleigh_strength(radius, wavelength, refraction_index, medium_index))
    detector = DetectorSpec.centered_on(nx, ny, pitch, center[0], center[1])
    return Scenario(wavelength, medium_index, sphere, detector)


def preset_optical() -> Scenario:
    """Polystyrene micro-sphere under red light on a 100 x 100 sensor."""
    return _preset(660e-9, (5e-6, 5e-6, 5e-6), 0.5e-6, 100, 100, 0.1e-6)


def preset_microwave() -> Scenario:
    """5 cm sphere at 15 cm under a 15 cm wave on the 52 x 62 radar scan grid."""
    return _preset(0.15, (0.15, 0.15, 0.15), 0.05, 52, 62, 0.005)
