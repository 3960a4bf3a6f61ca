"""Spectral diagnostics and two-qubit gate accounting.

Spectra are normalized by the largest eigenvalue magnitude so solutions sit
at exactly 0; the RMS of the normalized spectrum measures how widely the
eigenvalues spread. Gate budgets count the CNOTs needed to realize each
Pauli-Z monomial as a ladder: a weight-k rotation costs 2*(k-1) CNOTs.
"""

from dataclasses import dataclass

import numpy as np

from .hamiltonian import DiagonalHamiltonian, PauliTerm, diagonal, pauli_expand
from .instance import ProblemInstance
from .optimizer import RunRecord


@dataclass(frozen=True)
class SpectrumReport:
    normalized: np.ndarray   # energies divided by max |energy|, in [-1, 1]
    solutions: tuple[int, ...]
    rms: float
    kind: str
    n: int


def spectrum_report(H: DiagonalHamiltonian,
                    inst: ProblemInstance) -> SpectrumReport:
    """Normalized spectrum and its RMS spread."""
    scale = int(np.max(np.abs(H.diag)))
    if scale == 0:
        raise ValueError("spectrum is identically zero")
    normalized = H.diag.astype(np.float64) / scale
    rms = float(np.sqrt(np.mean(normalized * normalized)))
    return SpectrumReport(normalized=normalized,
                          solutions=tuple(sorted(inst.solutions)),
                          rms=rms, kind=H.kind, n=H.n)


def rms_by_qubit_count(instances: list[ProblemInstance],
                       kind: str) -> dict[int, float]:
    """Mean RMS spread over instances sharing a qubit count."""
    groups: dict[int, list[float]] = {}
    for inst in instances:
        report = spectrum_report(diagonal(inst, kind), inst)
        groups.setdefault(inst.n, []).append(report.rms)
    return {n: float(np.mean(vals)) for n, vals in sorted(groups.items())}


@dataclass(frozen=True)
class GateBudget:
    """CNOT count per ansatz layer, broken down by Pauli weight."""

    two_qubit_per_layer: int
    by_weight: dict[int, int]   # weight -> number of terms

    def cumulative(self, depth: int) -> int:
        return depth * self.two_qubit_per_layer


def gate_budget(terms: list[PauliTerm]) -> GateBudget:
    """Two-qubit gates per layer: 2*(k-1) CNOTs per weight-k term, k >= 2."""
    by_weight: dict[int, int] = {}
    for t in terms:
        by_weight[t.weight] = by_weight.get(t.weight, 0) + 1
    total = sum(cnt * 2 * (w - 1) for w, cnt in by_weight.items() if w >= 2)
    return GateBudget(two_qubit_per_layer=total, by_weight=by_weight)


def protocol_gate_budget(inst: ProblemInstance,
                         evolution_kind: str) -> GateBudget:
    return gate_budget(pauli_expand(diagonal(inst, evolution_kind)))


def fidelity_vs_gates(record: RunRecord,
                      budget: GateBudget) -> list[tuple[int, float]]:
    """(cumulative two-qubit gates, fidelity) pairs over the recorded depths."""
    return [(budget.cumulative(r.depth), r.fidelity) for r in record.records]
