"""Stationary states of coined quantum walks with a marked connected component."""

from ._kernels import HAVE_NUMBA, USE_NUMBA
from .bounds import (
    BoundReport,
    bound_for,
    compare_bound_to_simulation,
    compute_a_bar,
    probability_bound,
    unit_marked_amplitudes,
    verify_a_bound,
    witness_state,
)
from .errors import (
    GraphFormatError,
    InfeasibleError,
    MarkedSetError,
    NormDriftError,
    NoStationaryStateError,
    NotApplicableError,
    QWStationaryError,
)
from .generators import (
    FamilySpec,
    gen_complete,
    gen_counterexample,
    gen_cycle,
    gen_path,
    gen_star,
    gen_two_components,
    gen_zero_overlap,
    write_instance,
)
from .graph import (
    Graph,
    MarkedAnalysis,
    UnmarkedDecomposition,
    analyze_marked,
    decompose_unmarked,
    load_graph,
    read_edge_list,
    read_marked,
)
from .stationary import (
    Objective,
    Reason,
    ShortageSums,
    StationaryReport,
    StationaryState,
    UnmarkedAmplitudes,
    assemble_state,
    compute_shortages,
    construct_stationary,
    decide_existence,
    neutralize_shortages,
    overlap,
    solve_component_amplitudes,
)
from .walk import (
    EvolutionTrace,
    WalkOperator,
    apply_step,
    check_stationary,
    simulate,
    uniform_state,
    vertex_probabilities,
)

__version__ = "0.1.0"
