"""Exact simulation and solvers for phase kick-back algorithms over finite Abelian groups."""

from .characters import (
    Character,
    CycloSum,
    Multiset,
    MultisetClass,
    annihilator,
    char_eval,
    char_exponent,
    char_sum_over,
    classify_multiset,
    conjugate_char,
    fourier_transform,
    is_fully_balanced,
    is_zero_sum,
)
from .fbi import (
    FbiInstance,
    MarkerLedger,
    MarkerSelectionResult,
    PromiseViolationError,
    call_bound,
    call_bound_for,
    fbi_gpk_probe,
    fiber_multiset,
    image_description,
    is_fbi_spectral,
    is_fbi_structural,
    make_fbi_instance,
    marker_selection,
)
from .groups import (
    Coset,
    GroupElement,
    GroupSpec,
    SizeGuardError,
    SpecMismatchError,
    Subgroup,
    cosets_of,
    enumerate_subgroups,
    make_group,
    subgroup_closure,
)
from .hsp import (
    HspInstance,
    RecoveryResult,
    StoppingRule,
    Strategy,
    compare_strategies,
    exact_round_distribution,
    gpk_round,
    make_hsp_instance,
    recover_subgroup,
    simon_round,
)
from .kernels import BACKEND
from .simulate import (
    GpkOutcome,
    JointState,
    Oracle,
    SimulationError,
    StateVector,
    eigen_check,
    fourier_gate,
    gpk_amplitudes,
    gpk_closed_form,
    gpk_run,
    measure,
    oracle_gate,
)

__version__ = "0.1.0"
