"""floorsum: floor-quotient von Mangoldt sums and companion machinery.

Core objects: S(x) = sum_{n<=x} Lambda([x/n]) evaluated directly and by
O(sqrt x) quotient blocks; a certified enclosure of the constant
c = sum_d Lambda(d)/(d(d+1)); an exact Vaughan-style decomposition over
the free abelian group on primes; the truncated sawtooth approximation
with its Fejer error majorant; direct triple exponential sums with
brute-force proximity counts; and an exact rational exponent-pair
calculus.
"""

from .arith import (
    MangoldtTable,
    MoebiusTable,
    Rational,
    chebyshev_psi,
    format_rational,
    is_prime_u64,
    mangoldt_single,
    parse_rational,
    prime_power_split,
    psi_saw,
    sieve_mangoldt,
    sieve_moebius,
)
from .backend import BACKEND
from .constant import Enclosure, constant_enclosure, tail_bound
from .engine import (
    BlockDecomposition,
    ErrorSample,
    ErrorScanResult,
    enumerate_blocks,
    error_scan,
    frak_s_delta,
    geometric_grid,
    s2_via_psi,
    s_lambda_blocks,
    s_lambda_direct,
    split_sum,
)
from .exponents import (
    BoundExpr,
    ConditionViolated,
    DominanceCertificate,
    ExponentPair,
    GrowthTerm,
    a_process,
    b_process,
    bordelles_exponent,
    dominance_window,
    exponent_at,
    optimize_split,
    prop41_bound,
    window_edge,
)
from .expsum import (
    ExpSumInstance,
    ProximityQuery,
    bound_ratio_scan,
    count_proximity,
    eval_s_delta,
    lemma21_ratio,
    prop31_bound,
)
from .vaaler import fejer_bound, phi_weight, psi_vaaler, vaaler_check
from .vaughan import (
    PrimeLogVector,
    VaughanCoefficients,
    build_coefficients,
    mangoldt_weighted_sum,
    vaughan_check,
    vaughan_sum,
)

__version__ = "0.1.0"
