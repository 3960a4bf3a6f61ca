"""Compiled hot loop for repeated ansatz evaluations during training.

Semantics match simulator.apply_cost_layer / apply_mixer_layer exactly;
the equivalence is pinned by tests against the pure-numpy path and a dense
matrix-exponential oracle.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _apply_layer(amps, diag, g, b, n):
    dim = amps.shape[0]
    for k in range(dim):
        phi = -g * diag[k]
        amps[k] *= complex(np.cos(phi), np.sin(phi))
    c = np.cos(b)
    s = 1j * np.sin(b)
    for q in range(n):
        step = 1 << q
        for base in range(0, dim, step << 1):
            for low in range(base, base + step):
                a0 = amps[low]
                a1 = amps[low + step]
                amps[low] = c * a0 + s * a1
                amps[low + step] = s * a0 + c * a1


@njit(cache=True)
def evolve_kernel(amps, diag, gammas, betas, n):
    for layer in range(gammas.shape[0]):
        _apply_layer(amps, diag, gammas[layer], betas[layer], n)
    return amps


@njit(cache=True)
def _branch_cost(prefix_state, evo, cost_diag, gammas, betas, n, j, g_j, b_j):
    """Cost after re-running layer j with (g_j, b_j), then layers j+1..d-1."""
    amps = prefix_state.copy()
    _apply_layer(amps, evo, g_j, b_j, n)
    for k in range(j + 1, gammas.shape[0]):
        _apply_layer(amps, evo, gammas[k], betas[k], n)
    total = 0.0
    for k in range(amps.shape[0]):
        p = amps[k].real * amps[k].real + amps[k].imag * amps[k].imag
        total += p * cost_diag[k]
    return total


@njit(cache=True)
def fd_jac_kernel(psi0, evo, cost_diag, scaled_gammas, betas, n, e_scale,
                  step):
    """Central-difference cost gradient in scaled coordinates.

    Coordinates are [gamma * e_scale ..., beta ...]; perturbing the layer-j
    parameters leaves layers 0..j-1 untouched, so those prefix states are
    computed once and shared by all four layer-j evaluations.
    """
    d = scaled_gammas.shape[0]
    dim = psi0.shape[0]
    gammas = scaled_gammas / e_scale
    prefix = np.empty((d, dim), np.complex128)
    cur = psi0.copy()
    for j in range(d):
        prefix[j] = cur
        _apply_layer(cur, evo, gammas[j], betas[j], n)
    grad = np.empty(2 * d)
    for j in range(d):
        fp = _branch_cost(prefix[j], evo, cost_diag, gammas, betas, n, j,
                          (scaled_gammas[j] + step) / e_scale, betas[j])
        fm = _branch_cost(prefix[j], evo, cost_diag, gammas, betas, n, j,
                          (scaled_gammas[j] - step) / e_scale, betas[j])
        grad[j] = (fp - fm) / (2.0 * step)
        fp = _branch_cost(prefix[j], evo, cost_diag, gammas, betas, n, j,
                          gammas[j], betas[j] + step)
        fm = _branch_cost(prefix[j], evo, cost_diag, gammas, betas, n, j,
                          gammas[j], betas[j] - step)
        grad[d + j] = (fp - fm) / (2.0 * step)
    return grad
