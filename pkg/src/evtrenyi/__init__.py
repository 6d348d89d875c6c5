"""Rényi entropies of normalized maxima and their extreme-value limits."""

from .distributions import DistributionFamily, Endpoint, from_spec
from .entropy import EntropyResult, location_scale_shift, renyi_entropy_numeric, shannon_entropy_numeric
from .errors import (
    ConfigError,
    DegenerateTailError,
    DivergenceError,
    DomainError,
    EvtError,
    IntegrandError,
    NoConvergenceError,
    PreconditionError,
)
from .limits import LawKind, MaxStableLaw, ev_cdf, ev_pdf, limit_moment, limit_renyi_entropy
from .maxima import NormalizedMaximaDensity, moment_of_normalized_max, normalized_maxima, weibull_to_frechet
from .norming import Domain, NormingConstants, auxiliary_function, norming_constants
from .quadrature import QuadratureResult, integrate_adaptive
from .special import euler_mascheroni, log_gamma

__version__ = "0.1.0"
