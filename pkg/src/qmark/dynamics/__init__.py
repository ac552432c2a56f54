"""Interval maps, invariant measures and diagnostics."""

from .maps import (
    MAPS,
    Branch,
    PiecewiseMobius,
    get_map,
    is_ambiguous,
    map_apply,
    map_preimage,
    verify_level_sets,
)
from .measures import (
    INVARIANT_PAIRS,
    MEASURES,
    MeasureSpec,
    get_measure,
    invariance_check,
    measure_mass,
    random_intervals,
)
from .diagnostics import (
    conjugacy_check,
    conjugacy_sweep,
    derivative_ratio_diagnostic,
    extension_law_check,
    holder_constant,
    holder_estimate,
    plot_data,
    random_ecf_expansion,
    return_map_check,
    singularity_sweep,
    symbolic_action_check,
)
