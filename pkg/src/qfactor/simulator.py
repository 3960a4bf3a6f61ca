"""Dense state-vector engine for the alternating-layer ansatz.

Cost layers are applied as elementwise phases exp(-i*gamma*diag); the mixer
exp(-i*beta*H_M) with H_M = -sum_j sigma_x_j factors into the per-qubit map
cos(beta)*I + i*sin(beta)*sigma_x. No gate sequences are simulated.
"""

from dataclasses import dataclass

import numpy as np

from .hamiltonian import KIND_ABS_LP, KIND_LP, KIND_QP, diagonal
from .instance import ProblemInstance

INIT_UNIFORM = "uniform"       # |+>^n
INIT_ALTERNATING = "alternating"  # |+ - + - ...>, qubit 0 gets |+>


@dataclass(frozen=True)
class ProtocolConfig:
    """Evolution diagonal, cost diagonal, and initial state of one protocol."""

    name: str
    evolution_kind: str
    cost_kind: str
    init: str


PROTOCOLS = {
    "standard": ProtocolConfig("standard", KIND_QP, KIND_QP, INIT_UNIFORM),
    "linear_quadratic": ProtocolConfig("linear_quadratic", KIND_LP, KIND_QP,
                                       INIT_ALTERNATING),
    "linear_abs": ProtocolConfig("linear_abs", KIND_LP, KIND_ABS_LP,
                                 INIT_ALTERNATING),
}


def initial_state(cfg: ProtocolConfig, n: int) -> np.ndarray:
    """Protocol initial state as 2^n complex amplitudes."""
    dim = 1 << n
    amp = 2.0 ** (-n / 2)
    if cfg.init == INIT_UNIFORM:
        return np.full(dim, amp, dtype=np.complex128)
    if cfg.init == INIT_ALTERNATING:
        odd_mask = sum(1 << j for j in range(1, n, 2))
        parity = np.bitwise_count(np.arange(dim) & odd_mask).astype(np.int64)
        signs = 1 - 2 * (parity & 1)
        return (amp * signs).astype(np.complex128)
    raise ValueError(f"unknown initial state tag {cfg.init!r}")


def apply_cost_layer(state: np.ndarray, diag: np.ndarray,
                     gamma: float) -> np.ndarray:
    """Multiply in the diagonal phase exp(-i*gamma*diag), in place."""
    state *= np.exp(-1j * gamma * np.asarray(diag, dtype=np.float64))
    return state


def apply_mixer_layer(state: np.ndarray, beta: float, n: int) -> np.ndarray:
    """Apply exp(+i*beta*sigma_x) on every qubit, in place."""
    c = np.cos(beta)
    s = 1j * np.sin(beta)
    for q in range(n):
        view = state.reshape(-1, 2, 1 << q)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 + s * a1
        view[:, 1, :] = s * a0 + c * a1
    return state


def evolve(state: np.ndarray, evo_diag: np.ndarray, gammas: np.ndarray,
           betas: np.ndarray, n: int) -> np.ndarray:
    """Run all ansatz layers on a state, in place (compiled hot path)."""
    from ._kernels import evolve_kernel
    return evolve_kernel(state,
                         np.ascontiguousarray(evo_diag, dtype=np.float64),
                         np.ascontiguousarray(gammas, dtype=np.float64),
                         np.ascontiguousarray(betas, dtype=np.float64), n)


def evolve_layers(state: np.ndarray, evo_diag: np.ndarray, gammas, betas,
                  n: int) -> np.ndarray:
    """Pure-numpy reference for evolve, one layer at a time."""
    for g, b in zip(gammas, betas):
        apply_cost_layer(state, evo_diag, g)
        apply_mixer_layer(state, b, n)
    return state


def ansatz_state(cfg: ProtocolConfig, inst: ProblemInstance,
                 gammas, betas) -> np.ndarray:
    """Full ansatz: initial state, then d cost+mixer layer pairs."""
    gammas = np.asarray(gammas, dtype=np.float64)
    betas = np.asarray(betas, dtype=np.float64)
    if gammas.shape != betas.shape:
        raise ValueError("gamma and beta arrays must have equal length")
    evo = diagonal(inst, cfg.evolution_kind).diag.astype(np.float64)
    return evolve(initial_state(cfg, inst.n), evo, gammas, betas, inst.n)


def populations(state: np.ndarray) -> np.ndarray:
    """|amplitude|^2 per basis state."""
    return (state.real * state.real + state.imag * state.imag)


def expectation(state: np.ndarray, cost_diag) -> float:
    """<state| diag |state> for a diagonal observable."""
    return float(populations(state) @ np.asarray(cost_diag, dtype=np.float64))


def fidelity(state: np.ndarray, inst: ProblemInstance) -> float:
    """Total probability on solution basis states."""
    probs = populations(state)
    return float(sum(probs[b] for b in inst.solutions))


def cost_and_fidelity(cfg: ProtocolConfig, inst: ProblemInstance,
                      gammas, betas,
                      cost_diag: np.ndarray | None = None) -> tuple[float, float]:
    state = ansatz_state(cfg, inst, gammas, betas)
    if cost_diag is None:
        cost_diag = diagonal(inst, cfg.cost_kind).diag
    return expectation(state, cost_diag), fidelity(state, inst)
