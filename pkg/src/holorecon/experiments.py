"""Aperture-size sweep: enlarge the scanned area, re-simulate, reconstruct
and score each size against the sphere's cross-section mask."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from holorecon.exceptions import DegenerateInputError
from holorecon.metrics import LossReport, loss_report
from holorecon.propagation import KernelMode, reconstruct
from holorecon.simulate import Scenario, simulate, truth_mask


@dataclass(frozen=True)
class SweepConfig:
    base: Scenario
    sizes: Sequence[int]
    reconstruction_depth: float
    kernel_mode: KernelMode = field(default_factory=KernelMode)
    dc_suppress: bool = True

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if any(int(s) != s for s in self.sizes):
            raise ValueError("sizes must be integers")
        if not sizes:
            raise ValueError("sizes must not be empty")
        if sizes[0] < 0:
            raise ValueError("sizes must be nonnegative")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sizes must be strictly increasing, got {list(sizes)}")
        if not self.reconstruction_depth > 0:
            raise ValueError(f"reconstruction_depth must be > 0, got {self.reconstruction_depth}")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "kernel_mode", KernelMode.coerce(self.kernel_mode))

    def digest(self) -> str:
        from holorecon.io import format_scenario

        text = "\n".join([
            format_scenario(self.base),
            "sizes=" + ",".join(map(str, self.sizes)),
            f"depth={self.reconstruction_depth!r}",
            f"mode={self.kernel_mode.variant.value}/{self.kernel_mode.evanescent_policy.value}",
            f"dc_suppress={self.dc_suppress}",
        ])
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SweepRow:
    size: int
    nx: int
    ny: int
    report: Optional[LossReport]
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.report is not None


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]
    config_digest: str


def evaluate(sc: Scenario, depth, mode=None, dc_suppress=True) -> LossReport:
    """Simulate, reconstruct at ``depth`` and score one scenario."""
    hologram = simulate(sc)
    slice_ = reconstruct(hologram, depth, mode=mode, dc_suppress=dc_suppress)
    return loss_report(truth_mask(sc), slice_)


def run_sweep(cfg: SweepConfig) -> SweepResult:
    rows = []
    for s in cfg.sizes:
        sc = cfg.base.with_detector(cfg.base.detector.grown(s))
        try:
            report = evaluate(sc, cfg.reconstruction_depth, cfg.kernel_mode, cfg.dc_suppress)
        except DegenerateInputError as exc:
            rows.append(SweepRow(s, sc.detector.nx, sc.detector.ny, None, f"failed: {exc}"))
            continue
        rows.append(SweepRow(s, sc.detector.nx, sc.detector.ny, report))
    return SweepResult(rows, cfg.digest())


def series_stats(sizes, values):
    """Minimum, relative reduction from the first value, and interior local minima."""
    values = np.asarray(values, dtype=float)
    best = int(np.argmin(values))
    first = values[0]
    reduction = 1.0 - values[best] / first if first != 0 else 0.0
    minima = [sizes[i] for i in range(1, len(values) - 1)
              if values[i] < values[i - 1] and values[i] < values[i + 1]]
    return {
        "min": float(values[best]),
        "min_size": sizes[best],
        "reduction": float(reduction),
        "local_minima": minima,
    }


def summarize(result: SweepResult) -> str:
    ok = [r for r in result.rows if r.ok]
    if len(ok) < 2:
        raise ValueError("summarize needs at least two successful rows")
    sizes = [r.size for r in ok]
    lines = []
    for name in ("l2", "l2_zero"):
        st = series_stats(sizes, [getattr(r.report, name) for r in ok])
        minima = ",".join(map(str, st["local_minima"])) or "none"
        lines.append(
            f"{name}: min={st['min']:.6g} at size={st['min_size']} "
            f"reduction={100 * st['reduction']:.1f}% local_minima={minima}"
        )
    failed = len(result.rows) - len(ok)
    if failed:
        lines.append(f"failed rows: {failed}")
    return "\n".join(lines)
