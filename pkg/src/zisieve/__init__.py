"""zisieve: a Gaussian-integer sieve workbench.

Exact Z[i] arithmetic, Gaussian-prime tables, Mertens-type sums, the
linear-sieve apparatus (Rosser weights, F/f functions, V(z)), singular
series, and exact counts of representations N = p + P2 at desk scale.
"""

from .arith import (
    SingularSeriesValue,
    coprime_residues,
    euler_phi,
    lattice_count,
    moebius,
    phi_recip_sum,
    residues,
    singular_series,
)
from .chen import (
    DecompositionReport,
    RepresentationReport,
    bk_partition,
    build_A,
    build_B,
    chen_scan,
    constant_c,
    constant_c_double,
    final_positivity,
    r_of_N,
    weighted_count,
)
from .core import (
    GaussianInt,
    IdealGen,
    canonicalize,
    congruent,
    divrem,
    format_gaussian,
    gcd,
    norm,
    parse_gaussian,
)
from .mertens import MertensReport, mertens_report, sieve_density_ratio_check
from .primes import (
    IdealFactorization,
    PrimeTable,
    big_omega,
    build_prime_table,
    bv_discrepancy,
    factorize,
    is_gaussian_prime,
    omega,
    pi_congruence,
    pi_ideal,
)
from .sieve import (
    RosserWeights,
    SieveFunctionTable,
    SieveProblem,
    build_sieve_function_table,
    jr_bounds,
    restrict,
    rosser_lambda,
    sieve_count,
    v_of_z,
)

__version__ = "0.1.0"
