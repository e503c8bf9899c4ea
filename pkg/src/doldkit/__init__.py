"""doldkit: exact-arithmetic tests, transforms, and constructions for
integer sequences that count periodic points of dynamical systems."""

from . import arith, cli, dynsys, errors, lefschetz, repair, seqkit, series
from .dynsys import (
    FiniteMap,
    count_fixed,
    det_fix_sequence,
    euler_fermat_check,
    nielsen_circle,
    nielsen_klein,
    orbit_spec,
    realize,
    realize_sequence,
    sharkovskii_precedes,
    trace_sequence,
)
from .lefschetz import (
    Recurrence,
    generating_hankel_test,
    hankel_dets,
    lefschetz_sequence,
    periodic_to_matrices,
    recurrence_detect,
)
from .repair import (
    Composition,
    FailureResult,
    Monomial,
    PrimeStretch,
    SequenceSource,
    apply_time_change,
    bernoulli_pair,
    euler_abs,
    failure_window,
    scaled_source,
    stirling1,
    stirling2,
    surjective_tc_witness,
)
from .seqkit import (
    IntPoly,
    PeriodicCombination,
    Verdict,
    combo_add,
    combo_eval,
    combo_mul,
    congruence_test,
    dold_split,
    inverse_B,
    inverse_C,
    is_realizable,
    periodic_expansion,
    q_bracket,
    q_dold_check,
    reg,
    transform_B,
    transform_C,
)
from .series import (
    PowerSeries,
    RationalFn,
    artin_hasse,
    dirichlet_identity_check,
    feigenbaum_spec,
    fix_from_zeta,
    mobius_exp_check,
    p_integral,
    ps_exp,
    ps_inv,
    ps_log,
    ps_mul,
    ps_pow_rational,
    rational_fit,
    zeta_from_fix,
    zeta_product_from_orbits,
)

__version__ = "0.1.0"
