"""QAOA factorization of odd semiprimes with quadratic and null-space encoded
linear problem Hamiltonians."""

from .instance import (BENCHMARK_NUMBERS, ProblemInstance, benchmark_instances,
                       make_instance)
from .hamiltonian import (DiagonalHamiltonian, PauliTerm, diag_ABS_LP, diag_LP,
                          diag_QP, diagonal, max_pauli_weight, pauli_expand)
from .simulator import (PROTOCOLS, ProtocolConfig, ansatz_state, expectation,
                        fidelity, initial_state, populations)
from .optimizer import (RunRecord, TrainSchedule, grow_parameters,
                        incremental_train, landscape_scan, minimize)
from .analysis import (GateBudget, SpectrumReport, fidelity_vs_gates,
                       gate_budget, protocol_gate_budget, rms_by_qubit_count,
                       spectrum_report)

__all__ = [
    "BENCHMARK_NUMBERS", "ProblemInstance", "benchmark_instances",
    "make_instance", "DiagonalHamiltonian", "PauliTerm", "diag_ABS_LP",
    "diag_LP", "diag_QP", "diagonal", "max_pauli_weight", "pauli_expand",
    "PROTOCOLS", "ProtocolConfig", "ansatz_state", "expectation", "fidelity",
    "initial_state", "populations", "RunRecord", "TrainSchedule",
    "grow_parameters", "incremental_train", "landscape_scan", "minimize",
    "GateBudget", "SpectrumReport", "fidelity_vs_gates", "gate_budget",
    "protocol_gate_budget", "rms_by_qubit_count", "spectrum_report",
]

__version__ = "0.1.0"
