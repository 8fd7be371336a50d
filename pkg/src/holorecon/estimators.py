"""scikit-learn compatible wrappers around reconstruction and focus search.

Holograms are passed as ``(ny, nx)`` arrays or ``(n, ny, nx)`` stacks, so
the estimators drop into pipelines and ``GridSearchCV`` over depth or
kernel mode.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from holorecon._validation import check_grid_shape, check_holograms, check_positive
from holorecon.grid import ScalarGrid
from holorecon.metrics import loss_report
from holorecon.propagation import EvanescentPolicy, KernelMode, KernelVariant, focus_search, reconstruct


def _kernel_mode(est):
    return KernelMode(KernelVariant(est.mode), EvanescentPolicy(est.evanescent_policy))


def _grid(est, data):
    return ScalarGrid(data, est.pitch_, wavelength=est.wavelength_, medium_index=est.medium_index_)


class HologramReconstructor(TransformerMixin, BaseEstimator):
    """Back-propagate holograms to a fixed depth.

    Parameters
    ----------
    depth : float, default=0.15
        Reconstruction depth below the scan plane, in meters.
    wavelength : float, default=0.15
        Vacuum wavelength in meters.
    pitch : float, default=0.005
        Scan-grid spacing in meters.
    medium_index : float, default=1.0
    mode : {"OneWay", "Monostatic", "Fresnel"}, default="OneWay"
    evanescent_policy : {"Zero", "Decay"}, default="Zero"
    dc_suppress : bool, default=True
        Subtract the hologram mean before propagating.
    output : {"magnitude", "complex"}, default="magnitude"

    Attributes
    ----------
    grid_shape_ : tuple of int
        ``(ny, nx)`` seen during ``fit``.
    kernel_mode_ : KernelMode
    """

    def __init__(self, depth=0.15, wavelength=0.15, pitch=0.005, medium_index=1.0, mode="OneWay",
                 evanescent_policy="Zero", dc_suppress=True, output="magnitude"):
        self.depth = depth
        self.wavelength = wavelength
        self.pitch = pitch
        self.medium_index = medium_index
        self.mode = mode
        self.evanescent_policy = evanescent_policy
        self.dc_suppress = dc_suppress
        self.output = output

    def fit(self, X, y=None):
        stack, _ = check_holograms(X)
        self.depth_ = check_positive("depth", self.depth)
        self.wavelength_ = check_positive("wavelength", self.wavelength)
        self.pitch_ = check_positive("pitch", self.pitch)
        if not self.medium_index >= 1:
            raise ValueError(f"medium_index must be >= 1, got {self.medium_index}")
        self.medium_index_ = float(self.medium_index)
        if self.output not in ("magnitude", "complex"):
            raise ValueError(f"output must be 'magnitude' or 'complex', got {self.output!r}")
        self.kernel_mode_ = _kernel_mode(self)
        self.grid_shape_ = stack.shape[1:]
        return self

    def transform(self, X):
        check_is_fitted(self, "grid_shape_")
        stack, single = check_holograms(X)
        check_grid_shape(self, stack.shape[1:])
        slices = [reconstruct(_grid(self, h), self.depth_, mode=self.kernel_mode_,
                              dc_suppress=self.dc_suppress).data for h in stack]
        out = np.stack(slices)
        if self.output == "magnitude":
            out = np.abs(out)
        return out[0] if single else out

    def score(self, X, y):
        """Negative mean out-of-object loss against binary truth masks ``y``."""
        check_is_fitted(self, "grid_shape_")
        stack, _ = check_holograms(X)
        masks, _ = check_holograms(y)
        if masks.shape != stack.shape:
            raise ValueError(f"masks shape {masks.shape} does not match holograms {stack.shape}")
        losses = []
        for h, m in zip(stack, masks):
            slice_ = reconstruct(_grid(self, h), self.depth_, mode=self.kernel_mode_, dc_suppress=self.dc_suppress)
            losses.append(loss_report(ScalarGrid(m, self.pitch_), slice_).l2_zero)
        return -float(np.mean(losses))


class FocusDepthEstimator(BaseEstimator):
    """Estimate the in-focus depth of each hologram by a peak-magnitude scan.

    ``predict`` returns one depth per hologram. ``sharpness_curves_`` keeps
    the ``(steps, 2)`` curves from the last ``fit``.
    """

    def __init__(self, z_min=0.05, z_max=0.30, steps=26, wavelength=0.15, pitch=0.005, medium_index=1.0,
                 mode="OneWay", evanescent_policy="Zero", dc_suppress=True):
        self.z_min = z_min
        self.z_max = z_max
        self.steps = steps
        self.wavelength = wavelength
        self.pitch = pitch
        self.medium_index = medium_index
        self.mode = mode
        self.evanescent_policy = evanescent_policy
        self.dc_suppress = dc_suppress

    def _search(self, stack):
        results = [focus_search(_grid(self, h), self.z_min, self.z_max, self.steps,
                                mode=self.kernel_mode_, dc_suppress=self.dc_suppress) for h in stack]
        return np.array([z for z, _ in results]), [c for _, c in results]

    def fit(self, X, y=None):
        stack, _ = check_holograms(X)
        if not 0 < self.z_min < self.z_max:
            raise ValueError(f"need 0 < z_min < z_max, got {self.z_min}, {self.z_max}")
        self.wavelength_ = check_positive("wavelength", self.wavelength)
        self.pitch_ = check_positive("pitch", self.pitch)
        self.medium_index_ = float(self.medium_index)
        self.kernel_mode_ = _kernel_mode(self)
        self.grid_shape_ = stack.shape[1:]
        self.depths_, self.sharpness_curves_ = self._search(stack)
        return self

    def predict(self, X):
        check_is_fitted(self, "grid_shape_")
        stack, single = check_holograms(X)
        check_grid_shape(self, stack.shape[1:])
        depths, _ = self._search(stack)
        return depths[0] if single else depths
