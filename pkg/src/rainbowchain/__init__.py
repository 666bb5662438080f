"""Free-fermion numerics for the rainbow chain."""

from .chains import (
    ChainSpec,
    build_hopping_matrix,
    homogeneous_couplings,
    rainbow_couplings,
    read_couplings_csv,
    site_positions,
    write_couplings_csv,
)
from .fermions import (
    EigensolverError,
    FillingAmbiguityError,
    SingleBodySpectrum,
    diagonalize,
    exact_oracle_entropy,
    ground_state_correlations,
    read_correlation_csv,
    thermal_correlations,
    write_correlation_csv,
)
from .entanglement import (
    ArcDiagram,
    EntanglementData,
    EntropyProfile,
    SpacingFit,
    arc_diagram,
    block_entanglement,
    block_entropy,
    entanglement_spacing,
    entropy_profile,
    many_body_entanglement_levels,
)
from .cft import (
    CftParams,
    bulk_block_prediction,
    conformal_map,
    edge_block_prediction,
    finite_T_profile,
    fit_constants,
    fit_halfchain,
    halfchain_entropy_prediction,
    smooth_part,
    thermofield_spacing_prediction,
)
from .quench import (
    InitialState,
    QuenchTrajectory,
    build_dimer_state,
    build_rainbow_ideal,
    evolve,
    run_quench,
)

__version__ = "0.1.0"
