"""Circle-method toolkit for the prime / prime-square / powers-of-two
inequality: sufficient-count calculator, singular series, exponential
sums, the main-term integral, and desk-scale solution search."""

from .hp import (
    HPReal,
    ceil_guarded,
    hp,
    hp_euler_gamma,
    hp_exp,
    hp_log,
    hp_log2,
    hp_pi,
    hp_sqrt,
    parse_surd,
)
from .arith import (
    CFExpansion,
    Convergent,
    chebyshev_theta,
    continued_fraction,
    euler_phi,
    factorize,
    mobius,
    mult_order_2,
    sieve_primes,
)
from .series import (
    SingularValue,
    bound_rosser_schoenfeld,
    bound_sole_planat,
    c0_partial,
    sigma_double_prime,
    sigma_minus,
    sigma_prime,
)
from .constants import (
    NamedConstant,
    c5_partial_sum,
    capital_C,
    capital_C1_liwang,
    constant_C,
    constant_D,
    constant_D1,
    constant_c4,
    constant_nu,
    constants_table,
)
from .s0 import (
    CoefficientSystem,
    S0Report,
    SystemValidationError,
    compute_s0,
    compute_s0_liwang,
    gain_ratio,
    system_from_strings,
    validate_system,
)
from .sums import (
    MeasureEstimate,
    SumContext,
    eval_G,
    eval_S1,
    eval_S2,
    fejer_K,
    k_hat,
    markov_bound,
    measure_exceed,
    moment_count_Nk,
    moment_quadrature,
)
from .circle import (
    ArcDissection,
    IntegralResult,
    QuadratureSpec,
    default_spec,
    dissect,
    eval_T1,
    eval_T2,
    eval_U1,
    eval_U2,
    integrand,
    integrate_named,
    integrate_region,
    kernel_transform,
    master_integral,
    script_J,
    script_J_lower_bound,
    selberg_J,
    selberg_Jstar,
)
from .search import (
    CountReport,
    SolutionRecord,
    count_solutions,
    count_solutions_naive,
    diagonal_powers_count,
    r_count,
    rieger_count,
)
from .verify import CriterionResult, run_all, run_criterion

__version__ = "0.1.0"
