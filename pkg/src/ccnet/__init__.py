"""Complexity-guided CNN compression planning.

Computes image-complexity metrics for a dataset, calibrates a linear
accuracy-degradation model, and solves the width multiplier that meets a
disk budget, a memory budget, or an accuracy floor, all without training
a network.
"""

__version__ = "0.1.0"

from .calibrate import (
    CalibrationTable,
    DegradationModel,
    fit_dataset_slope,
    fit_lambda_delta,
    fit_omega,
    load_calibration_csv,
    normalize_profiles,
    paper_fixture_models,
)
from .complexity import (
    ComplexityProfile,
    DatasetManifest,
    blob_density,
    combine_jb,
    dataset_complexity,
    edge_complexity,
    jpeg_complexity,
    load_manifest,
    load_profile,
    save_profile,
    signal_energy,
)
from .netarch import (
    ALPHA_GRID,
    ArchSpec,
    LayerSpec,
    ParamAccount,
    param_count,
    parse_arch,
    preset,
    reduction_ratios,
    save_arch,
    scale_arch,
)
from .raster import BinaryMask, RasterImage, load_image, load_mask, to_gray
from .solver import (
    CompressionPlan,
    Constraint,
    accuracy_floor,
    alpha_for_accuracy,
    alpha_for_disk_budget,
    alpha_for_ram_budget,
    build_plan,
    disk_budget,
    epsilon_check,
    predict_rel_acc,
    ram_budget,
    snap_alpha,
)

__all__ = [
    "ALPHA_GRID",
    "ArchSpec",
    "BinaryMask",
    "CalibrationTable",
    "ComplexityProfile",
    "CompressionPlan",
    "Constraint",
    "DatasetManifest",
    "DegradationModel",
    "LayerSpec",
    "ParamAccount",
    "RasterImage",
    "accuracy_floor",
    "alpha_for_accuracy",
    "alpha_for_disk_budget",
    "alpha_for_ram_budget",
    "blob_density",
    "build_plan",
    "combine_jb",
    "dataset_complexity",
    "disk_budget",
    "edge_complexity",
    "epsilon_check",
    "fit_dataset_slope",
    "fit_lambda_delta",
    "fit_omega",
    "jpeg_complexity",
    "load_calibration_csv",
    "load_image",
    "load_manifest",
    "load_mask",
    "load_profile",
    "normalize_profiles",
    "paper_fixture_models",
    "param_count",
    "parse_arch",
    "predict_rel_acc",
    "preset",
    "ram_budget",
    "reduction_ratios",
    "save_arch",
    "save_profile",
    "scale_arch",
    "signal_energy",
    "snap_alpha",
    "to_gray",
]
