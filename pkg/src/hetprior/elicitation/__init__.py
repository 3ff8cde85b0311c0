from .chips import ChipAllocation
from .fitting import FitDegenerateError, FitFamily, FittedRatioDistribution, fit_ratio
from .priors import (
    BandProbabilities,
    ElicitedRatio,
    FeedbackDensity,
    HalfNormalTau,
    HeterogeneityPrior,
    LogNormalTauSq,
    TruncatedLogNormalTauSq,
    UniformTau,
    band_probabilities_exact,
    bands_from_sample,
    feedback_density,
    kde_density,
    prior_band_probabilities,
)
from .scales import (
    BAND_EDGES,
    BAND_LABELS,
    RANGE_Z,
    TURNER_M,
    TURNER_SD,
    InterpretationRow,
    OutcomeScale,
    ScaleKind,
    band_index,
    convert_scale,
    interpretation_table,
    interpretation_table_csv,
    interpretation_table_json,
    ratio_to_tau,
    tau_to_ratio,
    turner_truncation_upper,
)
from .session import (
    STAGE1_QUESTION,
    STAGE2_QUESTION,
    STAGE3_QUESTION,
    AuditRecord,
    EffectModel,
    ElicitationSession,
    SessionResult,
    Stage,
    StageError,
    UnsupportedDefaultError,
    dichotomize_guidance,
    empirical_default_prior,
    finalize,
    new_session,
    session_from_dict,
    session_to_dict,
    set_chips,
    stage1,
    stage2,
    stage3_decline,
    stage3_fit,
)

__all__ = [
    "ChipAllocation",
    "FitDegenerateError",
    "FitFamily",
    "FittedRatioDistribution",
    "fit_ratio",
    "BandProbabilities",
    "ElicitedRatio",
    "FeedbackDensity",
    "HalfNormalTau",
    "HeterogeneityPrior",
    "LogNormalTauSq",
    "TruncatedLogNormalTauSq",
    "UniformTau",
    "band_probabilities_exact",
    "bands_from_sample",
    "feedback_density",
    "kde_density",
    "prior_band_probabilities",
    "BAND_EDGES",
    "BAND_LABELS",
    "RANGE_Z",
    "TURNER_M",
    "TURNER_SD",
    "InterpretationRow",
    "OutcomeScale",
    "ScaleKind",
    "band_index",
    "convert_scale",
    "interpretation_table",
    "interpretation_table_csv",
    "interpretation_table_json",
    "ratio_to_tau",
    "tau_to_ratio",
    "turner_truncation_upper",
    "STAGE1_QUESTION",
    "STAGE2_QUESTION",
    "STAGE3_QUESTION",
    "AuditRecord",
    "EffectModel",
    "ElicitationSession",
    "SessionResult",
    "Stage",
    "StageError",
    "UnsupportedDefaultError",
    "dichotomize_guidance",
    "empirical_default_prior",
    "finalize",
    "new_session",
    "session_from_dict",
    "session_to_dict",
    "set_chips",
    "stage1",
    "stage2",
    "stage3_decline",
    "stage3_fit",
]
