"""Localizable entanglement, its worst-branch variant, and classical
correlation bounds for pure states of small qubit registers."""

from .dynamics import IsingChain, evolve, evolve_dense_oracle, hamiltonian_matrix
from .entanglement import (
    BlochDirection,
    CorrelationResult,
    classical_correlation_q,
    classical_correlation_q_grid,
    concurrence,
    concurrence_purity_oracle,
    correlation_at,
)
from .experiments import (
    BinSpread,
    DifferenceRecord,
    EnsembleSummary,
    SweepPoint,
    find_max_diff_state,
    run_branch_spread_study,
    run_difference_study,
    run_time_sweep,
)
from .localize import (
    BranchOutcome,
    LocalizationResult,
    MeasurementBasis,
    OptimizerConfig,
    OptimizerReport,
    enumerate_branches,
    le_objective,
    maximize,
    maximize_grid_oracle,
    maximize_many,
    nle_objective,
)
from .qstate import (
    PureState,
    SingleQubitUnitary,
    apply_local_unitary,
    ghz,
    haar_random_state,
    load_state,
    make_basis_state,
    project_qubit,
    reduce_to_pair,
    reduced_density_matrix,
    reduced_density_purity,
    save_state,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
