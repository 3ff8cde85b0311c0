from .distributions import (
    DistributionSpec,
    Gamma,
    HalfNormal,
    LogNormal,
    Normal,
    TruncatedLogNormal,
    Uniform,
    cdf,
    from_dict,
    quantile,
    sample,
    to_dict,
)
from .rng import RngStream

__all__ = [
    "DistributionSpec",
    "Gamma",
    "HalfNormal",
    "LogNormal",
    "Normal",
    "TruncatedLogNormal",
    "Uniform",
    "RngStream",
    "cdf",
    "quantile",
    "sample",
    "to_dict",
    "from_dict",
]
