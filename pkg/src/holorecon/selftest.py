"""Embedded invariant checks behind ``holorecon selftest``."""

import numpy as np

from holorecon.grid import ComplexField, dft2d, idft2d, spatial_frequencies
from holorecon.propagation import KernelMode, make_kernel, propagate
from holorecon.simulate import DetectorSpec, disk_mask, spherical_wave


def _conjugated_propagate(field, z, mode=None):
    kernel = make_kernel(field.nx, field.ny, field.pitch, field.wavelength, field.medium_index, z, mode)
    return idft2d(field.with_data(dft2d(field).data * np.conj(kernel.values)))


def band_limited_field(nx, ny, pitch, wavelength, fraction=0.9, seed=0, bound_factor=1.0):
    """Random field whose spectrum lies inside ``fraction`` of the propagating disk."""
    rng = np.random.default_rng(seed)
    k = 2 * np.pi / wavelength * bound_factor
    kx, ky = spatial_frequencies(nx, pitch), spatial_frequencies(ny, pitch)
    inside = ky[:, None] ** 2 + kx[None, :] ** 2 <= (fraction * k) ** 2
    spectrum = (rng.standard_normal((ny, nx)) + 1j * rng.standard_normal((ny, nx))) * inside
    return ComplexField(np.fft.ifft2(spectrum), pitch, wavelength)


def _dft_roundtrip(prop):
    rng = np.random.default_rng(1)
    u = ComplexField(rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16)), 1.0, 1.0)
    err = np.abs(idft2d(dft2d(u)).data - u.data).max()
    return err < 1e-12, f"max error {err:.2e}"


def _semigroup(prop):
    worst = 0.0
    for variant in ("OneWay", "Monostatic"):
        mode = KernelMode(variant, "Decay")
        u = band_limited_field(64, 64, 0.25, 1.0, seed=2)
        a = prop(prop(u, 0.3, mode), 0.5, mode)
        b = prop(u, 0.8, mode)
        worst = max(worst, np.abs(a.data - b.data).max() / np.abs(b.data).max())
    return worst < 1e-10, f"max relative error {worst:.2e}"


def _energy(prop):
    u = band_limited_field(64, 64, 0.25, 1.0, seed=3)
    e0 = np.sum(np.abs(u.data) ** 2)
    worst = max(abs(np.sum(np.abs(prop(u, z, KernelMode("OneWay", "Zero")).data) ** 2) / e0 - 1)
                for z in (0.1, 1.0, 10.0))
    return worst < 1e-9, f"max relative drift {worst:.2e}"


def _mask_count(prop):
    n = int(disk_mask(52, 62, 0.005, (26 * 0.005, 31 * 0.005), 0.05).data.sum())
    return abs(n - np.pi * 100) <= 8, f"{n} pixels vs {np.pi * 100:.1f}"


def _spherical_focus(prop):
    wavelength, z = 1e-3, 0.1
    det = DetectorSpec.centered_on(256, 256, wavelength / 2, 0.0, 0.0)
    u = spherical_wave(det, wavelength, (0.0, 0.0, z), converging=True)
    energy = np.abs(prop(u, z, KernelMode("OneWay")).data) ** 2
    frac = energy[126:131, 126:131].sum() / energy.sum()
    return frac >= 0.5, f"{100 * frac:.1f}% energy in 5x5 focus"


CHECKS = [
    ("dft_roundtrip", _dft_roundtrip),
    ("kernel_semigroup", _semigroup),
    ("energy_conservation", _energy),
    ("mask_count", _mask_count),
    ("spherical_focus", _spherical_focus),
]


def run_checks(fault=None):
    """Run every check; returns a list of ``(name, passed, detail)``.

    ``fault="kernel-sign"`` conjugates every propagation kernel, as a
    negative control for the suite itself.
    """
    if fault not in (None, "kernel-sign"):
        raise ValueError(f"unknown fault {fault!r}")
    prop = _conjugated_propagate if fault == "kernel-sign" else propagate
    results = []
    for name, check in CHECKS:
        passed, detail = check(prop)
        results.append((name, bool(passed), detail))
    return results
