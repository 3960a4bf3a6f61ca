"""Diagonal problem Hamiltonians and their Pauli-Z monomial expansions.

Three diagonals are used: the quadratic H_QP with entries (N - p*q)^2,
the linear H_LP with entries N - p*q (solution states sit in its null
space), and the elementwise absolute value |H_LP| used as an alternative
cost function. Entries are exact 64-bit integers; they only become floats
at the simulator boundary.
"""

import json
from dataclasses import dataclass

import numpy as np

from .instance import ProblemInstance

KIND_QP = "QP"
KIND_LP = "LP"
KIND_ABS_LP = "ABS_LP"

DROP_THRESHOLD = 1e-12


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """Real diagonal of a 2^n operator in the computational basis."""

    diag: np.ndarray  # int64, length 2^n
    kind: str
    n: int

    def __post_init__(self):
        if len(self.diag) != 1 << self.n:
            raise ValueError("diagonal length does not match qubit count")


@dataclass(frozen=True)
class PauliTerm:
    """A coefficient times a product of sigma_z over the support qubits."""

    support: frozenset[int]
    coefficient: float

    @property
    def weight(self) -> int:
        return len(self.support)


def diag_LP(inst: ProblemInstance) -> DiagonalHamiltonian:
    """Linear Hamiltonian: diag[b] = N - p(b) * q(b)."""
    vals = np.empty(inst.dim, dtype=np.int64)
    for b in range(inst.dim):
        p, q = inst.decode(b)
        vals[b] = inst.N - p * q
    return DiagonalHamiltonian(diag=vals, kind=KIND_LP, n=inst.n)


def diag_QP(inst: ProblemInstance) -> DiagonalHamiltonian:
    """Quadratic Hamiltonian: diag[b] = (N - p(b) * q(b))^2."""
    lp = diag_LP(inst).diag
    return DiagonalHamiltonian(diag=lp * lp, kind=KIND_QP, n=inst.n)


def diag_ABS_LP(inst: ProblemInstance) -> DiagonalHamiltonian:
    """Elementwise absolute value of the linear Hamiltonian."""
    lp = diag_LP(inst).diag
    return DiagonalHamiltonian(diag=np.abs(lp), kind=KIND_ABS_LP, n=inst.n)


def diagonal(inst: ProblemInstance, kind: str) -> DiagonalHamiltonian:
    builders = {KIND_QP: diag_QP, KIND_LP: diag_LP, KIND_ABS_LP: diag_ABS_LP}
    try:
        return builders[kind](inst)
    except KeyError:
        raise ValueError(f"unknown Hamiltonian kind {kind!r}") from None


def _fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform (length a power of two)."""
    a = a.copy()
    h = 1
    while h < len(a):
        view = a.reshape(-1, 2 * h)
        top = view[:, :h] + view[:, h:]
        bot = view[:, :h] - view[:, h:]
        view[:, :h] = top
        view[:, h:] = bot
        h *= 2
    return a


def pauli_expand(H: DiagonalHamiltonian,
                 drop_threshold: float = DROP_THRESHOLD) -> list[PauliTerm]:
    """Expand a diagonal into Pauli-Z monomials.

    Coefficient of the monomial with support mask S is the Walsh-Hadamard
    correlation 2^-n sum_b (-1)^popcount(b & S) diag[b]. Terms below
    drop_threshold in magnitude are omitted.
    """
    coeffs = _fwht(H.diag.astype(np.float64)) / len(H.diag)
    terms = []
    for mask, c in enumerate(coeffs):
        if abs(c) > drop_threshold:
            support = frozenset(j for j in range(H.n) if (mask >> j) & 1)
            terms.append(PauliTerm(support=support, coefficient=float(c)))
    terms.sort(key=lambda t: (t.weight, sorted(t.support)))
    return terms


def reconstruct(terms: list[PauliTerm], n: int) -> np.ndarray:
    """Diagonal represented by an expansion (inverse of pauli_expand)."""
    diag = np.zeros(1 << n)
    for t in terms:
        mask = 0
        for j in t.support:
            mask |= 1 << j
        parity = np.bitwise_count(np.arange(1 << n) & mask).astype(np.int64)
        signs = 1 - 2 * (parity & 1)
        diag += t.coefficient * signs
    return diag


def max_pauli_weight(terms: list[PauliTerm]) -> int:
    """Largest support size among nonzero terms."""
    if not terms:
        raise ValueError("empty expansion")
    return max(t.weight for t in terms)


def expansion_to_json(terms: list[PauliTerm]) -> str:
    """JSON export: [{"support": [...], "coeff": c}, ...] sorted by (weight, support)."""
    payload = [
        {"support": sorted(t.support), "coeff": t.coefficient} for t in terms
    ]
    return json.dumps(payload)
