"""Reflection-symmetry axis detection by linear-directional kernel density voting."""

from ._ldsym import (
    Error,
    axis_match,
    bessel_i0,
    denormalize_point,
    detect,
    evaluate_joint_density,
    normalize_point,
    pair_weight,
    pr_curve,
    reflect,
    triangulate,
    vmf_density,
)

__all__ = [
    "Error",
    "axis_match",
    "bessel_i0",
    "denormalize_point",
    "detect",
    "evaluate_joint_density",
    "normalize_point",
    "pair_weight",
    "pr_curve",
    "reflect",
    "triangulate",
    "vmf_density",
]
