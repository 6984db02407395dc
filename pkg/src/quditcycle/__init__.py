"""Exact single-qudit simulation of one-query cyclic-permutation classification."""

from .algorithm import (
    FourierKind,
    FourierVariant,
    NotCyclicError,
    RunReport,
    initial_index,
    one_query_insufficient,
    phase_table,
    qft,
    run_classical,
    run_quantum,
    sample_measurement,
)
from .linalg import (
    adjoint,
    apply_unitary,
    basis_state,
    equal_up_to_global_phase,
    fidelity,
    outer,
)
from .nmr import (
    PseudoPureSpec,
    PulseSegment,
    SpinSystem,
    inject_readout_noise,
    pseudo_pure,
    pulse_propagator,
    sequence_propagator,
    spin_operators,
    static_hamiltonian,
    transition_frequencies,
)
from .permutations import (
    Chirality,
    CyclicClass,
    Parity,
    Permutation,
    classify_cyclic,
    enumerate_cyclic,
    oracle_unitary,
    parity,
    reflection,
    relabel,
    rotation,
)
from .protocol import ORACLES, ProtocolResult, run_protocol, stage_unitary, theory_state
from .smp import OptimizerConfig, SmpResult, gate_fidelity, smp_optimize

__all__ = [
    "Chirality",
    "CyclicClass",
    "FourierKind",
    "FourierVariant",
    "NotCyclicError",
    "OptimizerConfig",
    "ORACLES",
    "Parity",
    "Permutation",
    "ProtocolResult",
    "PseudoPureSpec",
    "PulseSegment",
    "RunReport",
    "SmpResult",
    "SpinSystem",
    "adjoint",
    "apply_unitary",
    "basis_state",
    "classify_cyclic",
    "enumerate_cyclic",
    "equal_up_to_global_phase",
    "fidelity",
    "gate_fidelity",
    "initial_index",
    "inject_readout_noise",
    "one_query_insufficient",
    "oracle_unitary",
    "outer",
    "parity",
    "phase_table",
    "pseudo_pure",
    "pulse_propagator",
    "qft",
    "reflection",
    "relabel",
    "rotation",
    "run_classical",
    "run_protocol",
    "run_quantum",
    "sample_measurement",
    "sequence_propagator",
    "smp_optimize",
    "spin_operators",
    "stage_unitary",
    "static_hamiltonian",
    "theory_state",
    "transition_frequencies",
]

__version__ = "0.1.0"
