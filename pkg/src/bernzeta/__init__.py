"""bernzeta: exact Bernoulli numbers, irregular prime powers, and zeros
of p-adic zeta functions."""

from .errors import PrecisionError, SingularDeltaError
from .exact import (
    BernoulliCache,
    bernoulli,
    divided_bernoulli,
    divided_bernoulli_mod,
    numerator_via_zeta,
    power_sum,
    tau_digit_agreement,
    trivial_factor,
    vsc_denominator,
)
from .padic import (
    PadicApprox,
    ValuedRational,
    finite_difference,
    from_rational,
    ord_p,
    padic_binomial,
    psi_project,
    teichmuller,
)
from .pairs import (
    DeltaValue,
    DigitPair,
    IrregularPair,
    SingularTree,
    build_singular_tree,
    chain_of_pair,
    delta,
    digits_to_order,
    irregular_pairs_upto,
    lambda_map,
    lift_order,
    lift_with_shift,
    next_order,
    scan_irregular,
)
from .zeta import (
    ChiZero,
    MahlerCoeffs,
    ZetaContext,
    carlitz_congruence_check,
    chi_from_lift,
    chi_zero,
    mahler_coeffs,
    strong_kummer_check,
    T_polynomial,
    zeta_p0_pole_check,
    zeta_p_value,
    zeta_pl_eval,
)
from .apps import (
    adams_delta,
    b1_omega_check,
    delta_s1_s2_check,
    delta_via_power_sums,
    gcd_numer_denom,
    iwasawa_conditions,
    pll_check,
    power_sum_divisibility_equiv,
    tau_structure,
    verify_zeta_product,
)

__version__ = "0.1.0"
