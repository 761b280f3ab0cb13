"""Sharp bounds, the coupled pairs that attain them, and feasible-region curves."""

from .couplers import (
    ExtremalPairST,
    ExtremalPairUV,
    RootBundle,
    build_st,
    build_st_from_norm,
    build_uv,
    build_uv_from_norm,
    clear_root_cache,
    g_fn,
    pair_cond_renyi,
    slope_residual,
    tangency_roots,
    zeta_root,
)
from .curves import REGIONS, BoundCurve, sample_curve
from .theorems import (
    LOWER,
    UPPER,
    BoundResult,
    bhattacharyya_bounds,
    cond_bound_binary,
    cond_bound_st,
    cond_bound_uv,
    cond_bound_vs_infinity,
    fano_renyi,
    feasible_bounds,
    h2_hhalf_threshold,
    h2_vs_hhalf,
    pe_bounds,
    pe_from_z,
    uncond_bounds,
    uncond_norm_bounds,
    z_from_pe,
)

__all__ = [
    "BoundCurve",
    "BoundResult",
    "ExtremalPairST",
    "ExtremalPairUV",
    "LOWER",
    "REGIONS",
    "RootBundle",
    "UPPER",
    "bhattacharyya_bounds",
    "build_st",
    "build_st_from_norm",
    "build_uv",
    "build_uv_from_norm",
    "clear_root_cache",
    "cond_bound_binary",
    "cond_bound_st",
    "cond_bound_uv",
    "cond_bound_vs_infinity",
    "fano_renyi",
    "feasible_bounds",
    "g_fn",
    "h2_hhalf_threshold",
    "h2_vs_hhalf",
    "pair_cond_renyi",
    "pe_bounds",
    "pe_from_z",
    "sample_curve",
    "slope_residual",
    "tangency_roots",
    "uncond_bounds",
    "uncond_norm_bounds",
    "z_from_pe",
    "zeta_root",
]
