"""P-representations, restricted Moran sets and their Hausdorff dimensions."""
from .cylinders import (
    Cylinder,
    GapOrder,
    IntervalR,
    RestrictedCylinder,
    gap_sign,
    p_cyl_bounds,
    p_cyl_children,
    ru_cyl_bounds,
    ru_cyl_diameter,
    ru_cyl_ratio,
)
from .dimension import (
    DimensionResult,
    RatioSet,
    box_dim_estimate,
    cover_sum,
    dim_combo,
    dim_su,
    dim_thm1,
    dim_thm2,
    solve_moran,
)
from .fractal_sets import (
    CombinationAlphabet,
    CoverLevel,
    SuSetSpec,
    cover_measure_su,
    level_cover_combo,
    level_cover_su,
    member_combo,
    member_su,
    parse_su_digits,
    set_bounds_combo,
    set_bounds_su,
    su_block_word,
    validate_combo_alphabet,
)
from .numrep import (
    EventuallyPeriodicSeq,
    ProbVector,
    decode_negasadic,
    decode_P,
    decode_sadic,
    dual_sadic_forms,
    encode_sadic,
    eval_f,
    invert_f,
    validate_prob_vector,
)
from .stochastic import SampleBatch, ks_distance, sample_eta

__version__ = "0.1.0"
