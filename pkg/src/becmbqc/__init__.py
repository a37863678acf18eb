"""Measurement-based quantum computation on two-component BEC graph states."""

__version__ = "0.1.0"

from .errors import BecError, NumericError, ValidationError, ZeroProbabilityError
from .fock import Register, apply_pair_phase, apply_site_operator, fidelity, init_product
from .graph import GraphSpec, build_graph_state, parse_graph
from .measure import (
    LogicalState,
    ParityBasisSpec,
    ParityOutcome,
    logical_project,
    measure_parity,
    parity_basis_vector,
    parity_ket,
    remove_particle,
)
from .operators import (
    CoherentSpec,
    EdgeGate,
    GateKind,
    StokesAxis,
    coherent_state,
    fock_ket,
    hadamard_bec,
    lcz_phase,
    legacy_cz,
    rcz_phase,
    stokes_matrix,
    zz_evolution,
)
from .protocols import (
    ProtocolReport,
    logical_cz_gadget,
    oracle_eq34_eq35,
    oracle_protocol1,
    protocol1,
    protocol2,
)
