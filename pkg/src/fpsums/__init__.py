"""Exact counting and exponential-sum evaluation over prime fields.

The set energy itself is ``fpsums.energy.energy``; it is not re-exported so
that ``fpsums.energy`` keeps naming the module.
"""

from .energy import (
    CountResult,
    collinear_quadruples,
    collinear_triples,
    d_times,
    d_times_tilde,
    energy3,
    energy3_fn,
    energy_fn,
    energy_fn_set,
    n_count,
    n_count_nonzero,
    r3_pivot_sum,
    triples_equal_products,
    unit_line_incidences,
)
from .errors import FpError
from .expsum import (
    PairWeights,
    TrinomialSpec,
    WeightVec,
    cor_bound3_value,
    trilinear_s,
    trilinear_t,
    trinomial_params,
    trinomial_sum,
)
from .field import FieldCtx, additive_dft, make_field_ctx, mult_convolve
from .sets import FpSet, RepFn, diff_set, prod_set, rep_fn, subgroup

__version__ = "0.1.0"
