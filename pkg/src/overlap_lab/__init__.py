"""Exact overlaps of the projections C_t = {x + t y : (x, y) in C} of the four-corner Cantor set.

C_t is generated by the maps x -> (x + d) / 4 with d in {0, 3t, 3, 3t + 3}. For
rational t = p/q it has an exact overlap iff neither p nor q has odd 2-adic
valuation. This package decides that, checks it three independent ways, counts
the overlapping pairs in [1, N]^2, and measures level-n approximations exactly.
"""

from .classifier import OverlapClassification, ReducedRational, classify, membership_in_W
from .density import (
    DensityReport,
    count_W_hat_by_formula,
    coprime_count,
    enumerate_counts,
    odd_totient_ratio_sum,
)
from .geometry import (
    WidthOverflowError,
    level_endpoints,
    measure_and_dimension,
    render_W_grid,
)
from .numtheory import (
    GammaWitness,
    divisor_count,
    euler_phi,
    factorize,
    gamma_membership,
    mobius,
    two_adic_valuation,
)
from .oracles import (
    OverlapWitness,
    build_rank_instance,
    check_polynomial_divisibility,
    find_overlap_witness,
    no_overlap_by_divisibility,
    rank_equality_holds,
)

__version__ = "0.1.0"
