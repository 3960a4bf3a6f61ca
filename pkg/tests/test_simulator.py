import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from qfactor.hamiltonian import diag_QP, diagonal
from qfactor.instance import make_instance
from qfactor.simulator import (PROTOCOLS, ansatz_state, apply_cost_layer,
                               apply_mixer_layer, evolve, evolve_layers,
                               expectation, fidelity, initial_state,
                               populations)

STANDARD = PROTOCOLS["standard"]
LINEAR = PROTOCOLS["linear_abs"]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def mixing_matrix(n):
    """Dense -sum_j sigma_x_j."""
    H = np.zeros((1 << n, 1 << n))
    for j in range(n):
        op = np.eye(1)
        for k in range(n):
            # qubit 0 is the least significant bit
            op = np.kron(SIGMA_X if k == j else np.eye(2), op)
        H -= op
    return H


def dense_ansatz_oracle(cfg, inst, gammas, betas):
    """Full 2^n x 2^n matrix-exponential evolution."""
    evo = np.diag(diagonal(inst, cfg.evolution_kind).diag.astype(float))
    hm = mixing_matrix(inst.n)
    state = initial_state(cfg, inst.n)
    for g, b in zip(gammas, betas):
        state = expm(-1j * g * evo) @ state
        state = expm(-1j * b * hm) @ state
    return state


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)


def test_initial_state_standard():
    state = initial_state(STANDARD, 2)
    assert np.allclose(state, [0.5, 0.5, 0.5, 0.5])


def test_initial_state_alternating():
    state = initial_state(LINEAR, 2)
    assert np.allclose(state, [0.5, 0.5, -0.5, -0.5])


@pytest.mark.parametrize("n", [2, 4, 6])
def test_alternating_state_centered_in_mixer_spectrum(n):
    state = initial_state(LINEAR, n)
    energy = np.real(np.conj(state) @ (mixing_matrix(n) @ state))
    assert energy == pytest.approx(0.0, abs=1e-12)


def test_cost_layer_identity_at_zero_gamma():
    state = random_state(3, 1)
    diag = diag_QP(make_instance(15)).diag
    assert np.allclose(apply_cost_layer(state.copy(), diag, 0.0), state)


def test_cost_layer_angle_folding():
    inst = make_instance(21)
    diag = diag_QP(inst).diag
    e_max = int(diag.max())
    state = np.zeros(inst.dim, dtype=complex)
    state[int(np.argmax(diag))] = 1.0
    out = apply_cost_layer(state.copy(), diag, 2 * np.pi / e_max)
    assert np.max(np.abs(out - state)) < 1e-12


def test_cost_layer_leaves_null_space_alone():
    inst = make_instance(21)
    diag = diag_QP(inst).diag
    (sol,) = inst.solutions
    state = np.zeros(inst.dim, dtype=complex)
    state[sol] = 1.0
    for gamma in (0.3, 1.7, 12.0):
        assert np.allclose(apply_cost_layer(state.copy(), diag, gamma), state)


def test_mixer_identity_at_zero_beta():
    state = random_state(3, 2)
    assert np.allclose(apply_mixer_layer(state.copy(), 0.0, 3), state)


def test_mixer_half_pi_on_single_qubit():
    state = np.array([1.0, 0.0], dtype=complex)
    out = apply_mixer_layer(state, np.pi / 2, 1)
    assert np.allclose(out, [0.0, 1j])


def test_mixer_matches_matrix_exponential():
    state = random_state(3, 3)
    beta = 0.42
    expected = expm(-1j * beta * mixing_matrix(3)) @ state
    assert np.max(np.abs(apply_mixer_layer(state.copy(), beta, 3) - expected)) < 1e-12


@given(beta=st.floats(-10, 10), seed=st.integers(0, 100))
@settings(max_examples=30)
def test_mixer_preserves_norm(beta, seed):
    state = random_state(3, seed)
    out = apply_mixer_layer(state.copy(), beta, 3)
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)


def test_ansatz_depth_zero_and_zero_angles():
    inst = make_instance(15)
    psi0 = initial_state(STANDARD, inst.n)
    assert np.allclose(ansatz_state(STANDARD, inst, [], []), psi0)
    assert np.allclose(ansatz_state(STANDARD, inst, [0, 0, 0], [0, 0, 0]), psi0)


def test_consecutive_cost_layers_compose():
    inst = make_instance(21)
    diag = diag_QP(inst).diag
    state = random_state(3, 4)
    a = apply_cost_layer(apply_cost_layer(state.copy(), diag, 0.3), diag, 0.5)
    b = apply_cost_layer(state.copy(), diag, 0.8)
    assert np.max(np.abs(a - b)) < 1e-12


def test_gamma_2pi_periodicity_for_integer_diagonal():
    inst = make_instance(25)
    a = ansatz_state(STANDARD, inst, [0.4], [0.9])
    b = ansatz_state(STANDARD, inst, [0.4 + 2 * np.pi], [0.9])
    assert np.max(np.abs(a - b)) < 1e-12


def test_expectation_uniform_examples():
    inst = make_instance(15)
    psi0 = initial_state(STANDARD, inst.n)
    assert expectation(psi0, diagonal(inst, "QP").diag) == pytest.approx(90.0)
    assert expectation(psi0, diagonal(inst, "ABS_LP").diag) == pytest.approx(8.5)


def test_expectation_vanishes_on_solution():
    inst = make_instance(21)
    (sol,) = inst.solutions
    state = np.zeros(inst.dim, dtype=complex)
    state[sol] = 1.0
    for kind in ("QP", "LP", "ABS_LP"):
        assert expectation(state, diagonal(inst, kind).diag) == 0.0


def test_fidelity_examples():
    inst25 = make_instance(25)
    assert fidelity(initial_state(STANDARD, 4), inst25) == pytest.approx(1 / 16)
    inst35 = make_instance(35)
    assert fidelity(initial_state(STANDARD, 5), inst35) == pytest.approx(2 / 32)
    inst143 = make_instance(143)
    state = np.zeros(inst143.dim, dtype=complex)
    for b in inst143.solutions:
        state[b] = 1 / np.sqrt(2)
    assert fidelity(state, inst143) == pytest.approx(1.0)


def test_populations_basics():
    basis = np.zeros(8, dtype=complex)
    basis[5] = 1.0
    probs = populations(basis)
    assert probs[5] == 1.0 and probs.sum() == 1.0
    uniform = initial_state(STANDARD, 3)
    assert np.allclose(populations(uniform), 0.125)


@pytest.mark.parametrize("protocol", sorted(PROTOCOLS))
@pytest.mark.parametrize("N", [15, 21, 25])
def test_ansatz_matches_dense_oracle(protocol, N):
    cfg = PROTOCOLS[protocol]
    inst = make_instance(N)
    rng = np.random.default_rng(7)
    for _ in range(3):
        gammas = rng.uniform(-1, 1, size=4)
        betas = rng.uniform(-np.pi, np.pi, size=4)
        fast = ansatz_state(cfg, inst, gammas, betas)
        oracle = dense_ansatz_oracle(cfg, inst, gammas, betas)
        assert np.max(np.abs(fast - oracle)) < 1e-10


def test_kernel_matches_layered_numpy_path():
    inst = make_instance(77)
    cfg = PROTOCOLS["linear_quadratic"]
    evo = diagonal(inst, cfg.evolution_kind).diag.astype(float)
    rng = np.random.default_rng(11)
    gammas = rng.uniform(-0.2, 0.2, size=10)
    betas = rng.uniform(-1.5, 1.5, size=10)
    a = evolve(initial_state(cfg, inst.n), evo, gammas, betas, inst.n)
    b = evolve_layers(initial_state(cfg, inst.n), evo, gammas, betas, inst.n)
    assert np.max(np.abs(a - b)) < 1e-13


@pytest.mark.parametrize("protocol", sorted(PROTOCOLS))
def test_norm_preserved_through_deep_ansatz(protocol):
    cfg = PROTOCOLS[protocol]
    inst = make_instance(77)
    rng = np.random.default_rng(5)
    state = ansatz_state(cfg, inst, rng.uniform(-1, 1, 30),
                         rng.uniform(-3, 3, 30))
    assert populations(state).sum() == pytest.approx(1.0, abs=1e-10)
