"""bellscope: classical bounds for two-body permutationally invariant Bell
inequalities, their quantum violation with collective measurements, and a
small entanglement toolkit (Schmidt/PPT/entropies, spin chains, MPS).
"""

__version__ = "0.1.0"

from . import chains, collective, correlations, mps, numerics, quantum, symmetric
from .collective import (
    bell_operator,
    collective_operator,
    dicke_state,
    dicke_violation,
    lmg_energies,
    max_violation,
    ratio_scan,
    theta_sweep,
)
from .correlations import (
    Behavior,
    BellFunctional,
    CorrelatorSet,
    Scenario,
    TIExpression,
    behavior_from_correlators,
    behavior_from_quantum,
    chsh_correlator_functional,
    chsh_probability_functional,
    chsh_quantum_demo,
    correlators_from_behavior,
    is_nonsignalling,
    local_bound_bruteforce,
    ti_classical_bound,
)
from .numerics import RandomSource, hermitian_eigen, scalar_minimize, svd
from .quantum import (
    DensityOperator,
    StateVector,
    entanglement_entropy,
    haar_state,
    log_negativity,
    max_entangled,
    mutual_information,
    negativity,
    page_experiment,
    partial_trace,
    partial_transpose,
    ppt_report,
    renyi_entropy,
    schmidt_decompose,
    schmidt_rank,
    separable_pure,
    state_from_json,
    state_to_json,
    vn_entropy,
)
from .symmetric import (
    PIBellExpression,
    StrategyCounts,
    SymmetrizedCorrelators,
    classical_bound_symmetric,
    correlators_of_counts,
    dicke_expression,
    murcia,
    rioja,
)

__all__ = [
    "__version__",
    "numerics", "quantum", "correlations", "symmetric", "collective", "chains", "mps",
    "RandomSource", "hermitian_eigen", "scalar_minimize", "svd",
    "StateVector", "DensityOperator", "max_entangled", "haar_state",
    "schmidt_decompose", "schmidt_rank", "separable_pure",
    "state_to_json", "state_from_json",
    "partial_trace", "partial_transpose", "ppt_report",
    "negativity", "log_negativity", "vn_entropy", "renyi_entropy",
    "entanglement_entropy", "mutual_information", "page_experiment",
    "Scenario", "Behavior", "BellFunctional", "CorrelatorSet", "TIExpression",
    "is_nonsignalling", "behavior_from_quantum", "correlators_from_behavior",
    "behavior_from_correlators", "local_bound_bruteforce",
    "chsh_probability_functional", "chsh_correlator_functional",
    "chsh_quantum_demo", "ti_classical_bound",
    "PIBellExpression", "StrategyCounts", "SymmetrizedCorrelators",
    "correlators_of_counts", "classical_bound_symmetric",
    "rioja", "murcia", "dicke_expression",
    "collective_operator", "dicke_state", "lmg_energies", "bell_operator",
    "max_violation", "dicke_violation", "ratio_scan", "theta_sweep",
]
