"""Numba kernel for the single-flip Metropolis anneal.

Kept in its own module so importing the package (or running CLI commands
that never anneal) does not pay the numba import/JIT cost.

Randomness protocol: read r runs an xorshift64* generator whose state is
a splitmix64 hash of (master seed, r). It draws n uniforms for the
initial assignment, then one uniform per uphill proposal; downhill moves
accept unconditionally and proposals with beta * dE > 45 reject without
a draw (acceptance probability below 3e-20). The stream depends only on
(seed, read index), so results are independent of how reads are batched
or scheduled.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_U64 = np.uint64
_INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53


@njit(inline="always")
def _seed_state(master: np.uint64, read_index: np.uint64) -> np.uint64:
    z = master + read_index * _U64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    z = z ^ (z >> _U64(31))
    if z == _U64(0):  # xorshift must not start at zero
        z = _U64(0x9E3779B97F4A7C15)
    return z


@njit(inline="always")
def _next(state: np.uint64):
    state ^= state >> _U64(12)
    state ^= state << _U64(25)
    state ^= state >> _U64(27)
    value = np.float64((state * _U64(0x2545F4914F6CDD1D)) >> _U64(11)) * _INV_2_53
    return state, value


@njit(cache=True)
def anneal_block(betas, diag, couplings, master_seed, first_read, states, energies):
    """Run independent single-flip Metropolis anneals, one per state row.

    betas       : (sweeps,) float64, inverse-temperature schedule
    diag        : (n,) float64, linear coefficients
    couplings   : (n, n) float64, symmetric quadratic part, zero diagonal
    master_seed : uint64 schedule seed
    first_read  : global index of the first read in this block
    states      : (reads, n) int8, written with the final assignments
    energies    : (reads,) float64, incrementally tracked (offset excluded)
    """
    reads, n = states.shape
    sweeps = betas.shape[0]
    for r in range(reads):
        state = _seed_state(_U64(master_seed), _U64(first_read + r))
        x = states[r]
        for i in range(n):
            state, u = _next(state)
            x[i] = 1 if u < 0.5 else 0
        # local fields h_i = diag_i + sum_j couplings[i, j] x_j
        h = np.empty(n)
        for i in range(n):
            acc = diag[i]
            for j in range(n):
                if x[j] == 1:
                    acc += couplings[i, j]
            h[i] = acc
        energy = 0.0
        for i in range(n):
            if x[i] == 1:
                energy += diag[i]
                for j in range(i + 1, n):
                    if x[j] == 1:
                        energy += couplings[i, j]
        for t in range(sweeps):
            beta = betas[t]
            for i in range(n):
                xi = x[i]
                delta_e = (1.0 - 2.0 * xi) * h[i]
                if delta_e <= 0.0:
                    accept = True
                else:
                    arg = beta * delta_e
                    if arg > 45.0:
                        accept = False
                    else:
                        state, u = _next(state)
                        accept = u < math.exp(-arg)
                if accept:
                    delta = 1 - 2 * xi
                    x[i] = xi + delta
                    energy += delta_e
                    for j in range(n):
                        h[j] += couplings[i, j] * delta
        energies[r] = energy
