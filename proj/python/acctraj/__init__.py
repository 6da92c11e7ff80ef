"""Car-following trajectory analytics for ACC-equipped EV and ICEV followers."""

from _acctraj import (  # noqa: F401
    AsvResult,
    ConfigError,
    DataError,
    DtwResult,
    EmissionCoefficientTable,
    EmissionForm,
    EmissionType,
    FiveNumberSummary,
    SimilarityMatrix,
    VsFit,
    compute_acceleration,
    compute_asv,
    compute_drac,
    compute_ttc,
    downsample,
    dtw_distance,
    dtw_normalized,
    estimate_v_star,
    fit_vs_curve,
    instantaneous_moe,
    pairwise_matrix,
    smooth_speed,
    summarize_group,
)

__all__ = [name for name in dir() if not name.startswith("_")]
