"""Simulation and verification of qubit teleportation for a two-state ensemble.

The package covers classical (no-entanglement) transmission strategies,
teleportation through a partially entangled channel, protocol verification
by exact outcome enumeration and seeded Monte Carlo, and symmetric
telecloning with ensemble-optimized coefficients.
"""

__version__ = "0.1.0"

from .channels import (
    ChannelStrategyReport,
    average_fidelity_direct,
    combined_fidelity,
    direct_fidelity_state,
    horodecki_optimal_fidelity,
    optimize_combined,
    purification_fidelity_two_state,
    purification_fidelity_unknown,
    purification_success_probability,
    singlet_fraction,
    two_state_direct_fidelity,
)
from .classical import (
    ClassicalStrategy,
    DegenerateEnsembleError,
    StrategyReport,
    classical_fidelity,
    fidelity_biased_guess,
    fidelity_fuchs_peres,
    fidelity_min_error,
    fidelity_optimized,
    fidelity_unambiguous,
    min_error_probability,
    min_error_strategy,
    optimal_guess_angle,
    optimized_strategy,
    projective_guess_strategy,
    unambiguous_strategy,
    unambiguous_success_probability,
    unknown_state_classical_fidelity,
)
from .ensembles import (
    Channel,
    TwoStateEnsemble,
    channel_state,
    ensemble_density,
    make_states,
    overlap,
    source_entropy,
)
from .protocols import (
    ProtocolSpec,
    STANDARD_CORRECTION_MATRICES,
    enumerate_classical_strategy,
    enumerate_protocol_fidelity,
    mc_haar_average_fidelity,
    mc_protocol_fidelity,
    simulate_purification_branch,
    standard_teleportation,
)
from .states import (
    BELL_LABELS,
    BELL_VECTORS,
    BellOutcome,
    DensityMatrix,
    LocalOperator,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PureState,
    apply_local,
    bell_measure,
    fidelity,
    partial_trace,
    tensor,
    von_neumann_entropy,
)
from .telecloning import (
    CloneCoeffs,
    TelecloneResult,
    TelecloningSystem,
    alice_receivers_entanglement,
    apply_cloner,
    build_clone_states,
    build_telecloning_state,
    global_clone_fidelity,
    joint_clones_closed_form,
    optimal_global_fidelity,
    optimize_coeffs,
    teleclone,
    universal_coeffs,
)
