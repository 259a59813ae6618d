"""Thermal entanglement, toric classes and duality of spin-1/2 dimers."""

from .classification import (
    TorusInvariants,
    dual_map,
    duality_residuals,
    is_dual_pair,
    same_class,
    sample_class,
    torus_invariants,
)
from .errors import (
    DimerError,
    DomainError,
    InvalidParameterError,
    InvalidStateError,
    NumericError,
)
from .measures import (
    chsh_parameter,
    concurrence_branches,
    concurrence_wootters,
    concurrence_x,
    negativity,
)
from .model import (
    Category,
    Convention,
    DerivedAngles,
    DimerSpec,
    GeneralCouplings,
    compile_spec,
    couplings_from_spin_convention,
    derived_quantities,
    hamiltonian_matrix,
    heisenberg,
    xy,
)
from .phasediagram import (
    DiagramGrid,
    TransitionCurve,
    concurrence_grid,
    critical_temperatures,
    entangled_area,
    heisenberg_tc,
    negativity_grid,
    transition_curve,
)
from .thermal import (
    XState,
    block_energies,
    log_partition,
    partition_function,
    thermal_state,
    thermal_state_oracle,
)

__version__ = "0.1.0"
