"""Zipf-Pareto efficiency functional and companion information measures."""

__version__ = "0.1.0"

from .entropy import (
    VarentropyConfig,
    differential_entropy,
    shannon_discrete,
    shannon_pareto,
    varentropy_bs_pareto,
    varentropy_discrete,
    varentropy_power_numeric,
    varentropy_power_pareto,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateError,
    DivergenceError,
    DomainError,
    EmptyInputError,
    FeasibilityError,
    InsufficientDataError,
    ValidationError,
    ZPError,
)
from .measures import (
    Distribution,
    EfficiencyParams,
    EngineExchange,
    PdfSpec,
    compose_efficiency,
    continuous_efficiency,
    discrete_efficiency,
    engine_efficiency,
    per_state_efficiency,
)
from .pareto import (
    ParetoModel,
    ZipfModel,
    a_from_beta,
    beta_from_a,
    gini_from_beta,
    zero_efficiency_threshold,
    zero_shannon_threshold,
    zipf_curve,
    zp_efficiency,
)
from .quadrature import QuadratureConfig
from .rootfind import solve_bracketed_root
