"""Double Jaynes-Cummings dynamics and four-qubit SLOCC invariants."""
from .dynamics import (
    InitialStateSpec,
    JCCoefficients,
    ModelParams,
    closed_form_I1_phi,
    closed_form_I2_phi,
    closed_form_I3_phi,
    closed_form_I4_phi,
    coefficients,
    ghz_family_reference,
    phi_state,
    psi_state,
)
from .invariants import (
    BlockDecomposition,
    InvariantSet,
    blocks,
    compute_invariants,
    covectors,
    dot_g,
    four_determinant,
    four_tangle,
    invariant_I1,
    invariant_I2_plucker,
    invariant_I2_wedge,
    invariant_I3,
    invariant_I4,
)
from .oracle import (
    FockTruncation,
    block_rabi,
    build_hamiltonian,
    evolve,
    evolve_joint,
    extract_four_qubit,
    fidelity_up_to_phase,
)
from .states import (
    FourQubitState,
    NonUnitaryFactor,
    ZeroVector,
    apply_local_unitaries,
    make_state,
    norm,
    random_state,
    random_su2,
)

__version__ = "0.1.0"
