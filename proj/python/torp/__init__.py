"""Thresholding-based outlier robust PCA."""

from ._torp import (
    InlierModel,
    InstanceParams,
    NoiseModel,
    ProblemInstance,
    RecoveryResult,
    Termination,
    TorpConfig,
    TorpGConfig,
    TorpNConfig,
    TraceRow,
    fast_pr,
    gaussian_tail_census,
    generate,
    ht_fraction,
    ht_longest_count,
    ht_value,
    load_instance,
    load_matrix,
    measure_incoherence,
    operator_norm,
    residual_projection,
    save_instance,
    save_matrix,
    subspace_residual,
    torp,
    torp_bin,
    torp_g,
    torp_n,
    truncated_svd,
)

__all__ = [
    "InlierModel",
    "InstanceParams",
    "NoiseModel",
    "ProblemInstance",
    "RecoveryResult",
    "Termination",
    "TorpConfig",
    "TorpGConfig",
    "TorpNConfig",
    "TraceRow",
    "fast_pr",
    "gaussian_tail_census",
    "generate",
    "ht_fraction",
    "ht_longest_count",
    "ht_value",
    "load_instance",
    "load_matrix",
    "measure_incoherence",
    "operator_norm",
    "residual_projection",
    "save_instance",
    "save_matrix",
    "subspace_residual",
    "torp",
    "torp_bin",
    "torp_g",
    "torp_n",
    "truncated_svd",
]
