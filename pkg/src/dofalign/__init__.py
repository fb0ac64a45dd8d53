"""Degrees-of-freedom experiments on K-user Gaussian interference channels.

Exact gain-matrix algebra over rationals and real quadratic fields, a
truncated-lattice alignment scheme with Monte Carlo error simulation, a
sumset/additive-combinatorics toolkit, a 3-user multilevel deterministic
code, and closed-form DoF upper bounds, all behind a deterministic CLI.
"""

__version__ = "0.1.0"

from .quadratic import (
    QuadraticIrrational,
    continued_fraction_convergents,
    liouville_delta,
    sign_plus_root,
)
from .seeds import derive_key, rng_for
from .channel import (
    CanonicalTriple,
    DiagonalScaling,
    GainMatrix,
    NoiseSpec,
    apply_channel,
    deterministic_offset,
    integerize,
    is_fully_connected,
    lower_triangular_minor,
    reduce_to_canonical,
    scale,
)
from .matrixio import dump, dumps, load, loads
from .lattice import (
    SeparationReport,
    SimulationResult,
    TruncatedLattice,
    build_codebook,
    fano_rate_bound,
    interference_range,
    min_separation,
    nearest_point_decode,
    simulate_symbol_error,
)
from .sumsets import (
    BsgSearchError,
    IntVectorSet,
    PairSubset,
    all_pairs,
    bsg_construct,
    difference_set,
    dilate,
    entropy_of_sum,
    exg_construct,
    iterate_sum,
    partial_sumset,
    plunnecke_check,
    ruzsa_cover,
    set_combine,
    setsum_bound_check,
    sum_fibers,
    sumset,
)
from .multilevel import (
    LevelScheme,
    MessageTuple,
    SchemeValidation,
    channel_outputs,
    decode,
    default_scheme,
    encode,
    exhaustive_zero_error,
    scheme_dof,
    search_schemes,
    user_rates,
    validate_scheme,
)
from .bounds import (
    BoundReport,
    KuserBoundReport,
    canonical_pair,
    d_exponent,
    dof_slope_estimate,
    epsilon_of,
    gaussian_entropy_ub,
    halfK_upper,
    rational_3user_bound,
    rational_Kuser_bound,
    scaling_invariance_holds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
