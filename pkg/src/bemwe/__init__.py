"""Bivariate exponentiated modified Weibull extension (BEMWE) distribution."""

__version__ = "0.1.0"

from .bivariate import (  # noqa: E402
    BemweParams,
    BivariatePair,
    BivariateSample,
    DensityKind,
    DensityValue,
    Region,
    bemwe_sample,
    bivariate_hazard,
    conditional_pdf,
    joint_cdf,
    joint_pdf,
    joint_survival,
    marginal_cdf,
    marginal_pdf,
    max_cdf,
    min_cdf,
)
from .emwe import (  # noqa: E402
    EmweParams,
    emwe_cdf,
    emwe_hazard,
    emwe_pdf,
    emwe_quantile,
    emwe_sample,
    emwe_survival,
)
from .errors import (  # noqa: E402
    AccuracyError,
    BemweError,
    ConditioningError,
    ConvergenceError,
    DataError,
    DomainError,
    InputError,
    OverflowSignal,
)
from .inference import (  # noqa: E402
    FitReport,
    FixedShape,
    RegionPartition,
    fit_mle,
    log_likelihood,
    observed_information,
    partition_sample,
    score,
)
from .moments import MomentRequest, marginal_moment, moment_mc_estimate  # noqa: E402
