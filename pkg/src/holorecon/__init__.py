"""Microwave/optical in-line holography: simulation, angular-spectrum
reconstruction and aperture-size error analysis."""

from holorecon.exceptions import DegenerateInputError, GridParseError, ScenarioParseError
from holorecon.grid import ComplexField, ScalarGrid, dft2d, idft2d, spatial_frequencies
from holorecon.propagation import (
    EvanescentPolicy,
    KernelMode,
    KernelVariant,
    PropagationKernel,
    focus_search,
    make_kernel,
    propagate,
    reconstruct,
)
from holorecon.simulate import (
    DetectorSpec,
    ForwardModel,
    Scenario,
    SphereSpec,
    disk_mask,
    preset_microwave,
    preset_optical,
    simulate,
    simulate_disk_hologram,
    simulate_point_hologram,
    truth_mask,
)
from holorecon.metrics import LossReport, l2_loss, l2_zero_loss, loss_report, normalize
from holorecon.experiments import SweepConfig, SweepResult, SweepRow, run_sweep, summarize
from holorecon.estimators import FocusDepthEstimator, HologramReconstructor

__version__ = "0.1.0"

__all__ = [
    "ComplexField",
    "DegenerateInputError",
    "DetectorSpec",
    "EvanescentPolicy",
    "FocusDepthEstimator",
    "ForwardModel",
    "GridParseError",
    "HologramReconstructor",
    "KernelMode",
    "KernelVariant",
    "LossReport",
    "PropagationKernel",
    "ScalarGrid",
    "Scenario",
    "ScenarioParseError",
    "SphereSpec",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "dft2d",
    "disk_mask",
    "focus_search",
    "idft2d",
    "l2_loss",
    "l2_zero_loss",
    "loss_report",
    "make_kernel",
    "normalize",
    "preset_microwave",
    "preset_optical",
    "propagate",
    "reconstruct",
    "run_sweep",
    "simulate",
    "simulate_disk_hologram",
    "simulate_point_hologram",
    "spatial_frequencies",
    "summarize",
    "truth_mask",
]
