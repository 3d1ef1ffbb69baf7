"""Moebius/Mertens summatory toolkit.

Segmented sieves, exact-rational and error-certified evaluation of the
classical summatory functions g, f, M, theta, eps, h, structural identity
checks, certified inequality scans, and sub-linear floor-quotient
evaluators for g(x) and M(x).
"""

from .bounds import (
    BoundReport,
    ConvergenceReport,
    check_g_bound,
    check_harmonic_bound,
    check_mangoldt_bound,
    check_tail_bound,
    check_theta_bounds,
    empirical_G,
    gamma_oracle,
    h_convergence,
    log_square_sum_constant,
    m_over_x_convergence,
    tail_bound_scan,
)
from .certified import EPS, EULER_GAMMA, CertifiedFloat, CompensatedSum
from .fast import (
    FloorValueMap,
    MertensEvaluator,
    g_recursive,
    g_recursive_exact,
    g_recursive_float,
    m_recursive,
    mertens_floor_map,
    mertens_prefix_recursive,
    quotient_blocks,
)
from .identities import (
    CutoffExceededError,
    IDENTITY_TOLERANCE,
    IdentityCheck,
    abel_rearrangement_check,
    abel_scan,
    capital_f,
    decomposition_check,
    decomposition_scan,
    divisor_sum,
    gram_identity,
    gram_scan,
    prime_power_tail,
)
from .sieve import (
    DEFAULT_BLOCK_CAPACITY,
    MoebiusBlock,
    PrimeTable,
    RangeTooLargeError,
    moebius_oracle,
    sieve_moebius,
    sieve_primes,
)
from .summatory import (
    EXACTNESS_CUTOFF,
    ExactRational,
    SamplePoint,
    ScaledMoebiusPrefix,
    SummatorySeries,
    SummatoryTables,
    big_m,
    epsilon,
    f_value,
    g_exact,
    g_float,
    h_direct,
    harmonic,
    harmonic_number,
    series_scan,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CertifiedFloat",
    "CompensatedSum",
    "ConvergenceReport",
    "CutoffExceededError",
    "DEFAULT_BLOCK_CAPACITY",
    "EPS",
    "EULER_GAMMA",
    "EXACTNESS_CUTOFF",
    "ExactRational",
    "FloorValueMap",
    "IDENTITY_TOLERANCE",
    "IdentityCheck",
    "MertensEvaluator",
    "MoebiusBlock",
    "PrimeTable",
    "RangeTooLargeError",
    "SamplePoint",
    "ScaledMoebiusPrefix",
    "SummatorySeries",
    "SummatoryTables",
    "abel_rearrangement_check",
    "abel_scan",
    "big_m",
    "capital_f",
    "check_g_bound",
    "check_harmonic_bound",
    "check_mangoldt_bound",
    "check_tail_bound",
    "check_theta_bounds",
    "decomposition_check",
    "decomposition_scan",
    "divisor_sum",
    "empirical_G",
    "epsilon",
    "f_value",
    "g_exact",
    "g_float",
    "g_recursive",
    "g_recursive_exact",
    "g_recursive_float",
    "gamma_oracle",
    "gram_identity",
    "gram_scan",
    "h_convergence",
    "h_direct",
    "harmonic",
    "harmonic_number",
    "log_square_sum_constant",
    "m_over_x_convergence",
    "m_recursive",
    "mertens_floor_map",
    "mertens_prefix_recursive",
    "moebius_oracle",
    "prime_power_tail",
    "quotient_blocks",
    "series_scan",
    "sieve_moebius",
    "sieve_primes",
    "tail_bound_scan",
    "theta",
]
