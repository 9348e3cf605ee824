"""Generalized CHSH functions for GHZ states.

Library layout:

- ``qops``: dense states, operators, tensor products, eigensolver.
- ``bell``: n-qubit CHSH configurations, closed-form GHZ expectations,
  two-qubit reduction and random dominance scans.
- ``games``: the two-player CHSH game and its single-qubit counterpart.
- ``degeneracy``: saturation classification, canonical configurations,
  degenerate-basis enumeration and noise-robustness experiments.
- ``cli``: the ``ghzbell`` command-line frontend.
"""

__version__ = "0.1.0"

from .bell import (
    BellConfig,
    DegenerateDirectionError,
    MeasurementDirection,
    ReductionReport,
    ScanResult,
    ScanSummary,
    TwoQubitConfig,
    bell_operator,
    chsh_value,
    equatorial,
    equatorial_projection,
    four_qubit_reference_config,
    ghz_product_expectation,
    ghz_state,
    polar,
    product_direction,
    psi_plus_correlation,
    random_config,
    random_direction,
    reduce_to_two_qubit,
    reduction_dominance_scan,
    two_qubit_chsh_value,
)
from .degeneracy import (
    TSIRELSON,
    BasisConstruction,
    DegeneracyMismatchError,
    DegeneracyReport,
    FamilyCheck,
    FourQubitExample,
    InconsistentConfigError,
    NotSaturatingError,
    Orientation,
    ParityError,
    PhaseSumError,
    SaturationClass,
    SaturationFamily,
    SymmetryCheck,
    SymmetryTriple,
    canonical_axis_config,
    canonical_config,
    canonical_planar_config,
    classify_saturating_config,
    complement_exclusion_holds,
    degenerate_basis_axis,
    degenerate_basis_planar,
    four_qubit_example,
    ghz_symmetry_overlap,
    planar_subsets,
    robustness_experiment,
    symmetry_family_check,
    symmetry_triple,
)
from .games import (
    ChshStrategy,
    GameOutcomeTable,
    MonteCarloResult,
    alice_observable,
    bob_observable,
    chsh_game_value,
    chsh_star_value,
    identity_strategy,
    observable_bloch,
    optimal_strategy,
    play_monte_carlo,
    random_strategy,
    strategy_from_bloch,
    unitary_from_observable,
)
from .qops import (
    ATOL,
    IDENTITY2,
    MAX_QUBITS,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SPECTRAL_TOL,
    CapacityError,
    DensityMatrix,
    DimensionMismatchError,
    HermitianOperator,
    StateVector,
    Unitary2,
    eig_hermitian,
    eigvals_hermitian,
    expectation,
    multiplicity_of_max,
    pauli_observable,
    phase_rotation_z,
    rotation,
    tensor,
)
