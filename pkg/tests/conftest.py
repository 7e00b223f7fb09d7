"""Shared fixtures: the 2x2 worked example, its published coefficient
matrices, and independent oracles used to cross-check the builders."""

from __future__ import annotations

from itertools import product

import pytest

from qubols import CrossTermPolicy, EncodingConfig, LinearSystemProblem

# The 2x2 reference system: A = ((3, 1), (-1, 2)), b = (-1, 5), with two
# integer bits per sign group (each unknown in [-3, 3]).
REF_A = ((3.0, 1.0), (-1.0, 2.0))
REF_B = (-1.0, 5.0)

# Published 8x8 coefficient matrix with the same-unknown +/- cross terms kept.
Q1_DENSE = [
    [26, 40, -20, -40, 2, 4, -2, -4],
    [0, 72, -40, -80, 4, 8, -4, -8],
    [0, 0, -6, 40, -2, -4, 2, 4],
    [0, 0, 0, 8, -4, -8, 4, 8],
    [0, 0, 0, 0, -13, 20, -10, -20],
    [0, 0, 0, 0, 0, -16, -20, -40],
    [0, 0, 0, 0, 0, 0, 23, 20],
    [0, 0, 0, 0, 0, 0, 0, 56],
]

# The same build with those cross terms zeroed.
Q2_DENSE = [
    [26, 40, 0, 0, 2, 4, -2, -4],
    [0, 72, 0, 0, 4, 8, -4, -8],
    [0, 0, -6, 40, -2, -4, 2, 4],
    [0, 0, 0, 8, -4, -8, 4, 8],
    [0, 0, 0, 0, -13, 20, 0, 0],
    [0, 0, 0, 0, 0, -16, 0, 0],
    [0, 0, 0, 0, 0, 0, 23, 20],
    [0, 0, 0, 0, 0, 0, 0, 56],
]

# Published ground states of the kept-cross-terms build, all at body
# energy -26: three bit patterns for x1 = -1 crossed with two for x2 = 2.
GROUND_STATES_FULL = {
    (0, 1, 1, 1, 0, 1, 0, 0),
    (0, 1, 1, 1, 1, 1, 1, 0),
    (0, 0, 1, 0, 0, 1, 0, 0),
    (1, 0, 0, 1, 1, 1, 1, 0),
    (0, 0, 1, 0, 1, 1, 1, 0),
    (1, 0, 0, 1, 0, 1, 0, 0),
}

# Unique ground state once the cross terms are removed.
GROUND_STATE_ZEROED = (0, 0, 1, 0, 0, 1, 0, 0)

REF_SOLUTION = (-1.0, 2.0)
REF_MIN_BODY_ENERGY = -26.0


@pytest.fixture
def ref_config() -> EncodingConfig:
    return EncodingConfig(l_min=0, l_max=1, scheme="two_sided")


@pytest.fixture
def ref_problem(ref_config) -> LinearSystemProblem:
    return LinearSystemProblem(A=REF_A, b=REF_B, config=ref_config)


@pytest.fixture
def ref_problem_offset() -> LinearSystemProblem:
    cfg = EncodingConfig(l_min=0, l_max=1, scheme="offset")
    return LinearSystemProblem(A=REF_A, b=REF_B, config=cfg)


@pytest.fixture
def full_policy() -> CrossTermPolicy:
    return CrossTermPolicy.full()


@pytest.fixture
def zeroed_policy() -> CrossTermPolicy:
    return CrossTermPolicy.zeroed()


def all_bitstrings(n: int):
    """Every {0,1}^n assignment, lexicographic by tuple."""
    return product((0, 1), repeat=n)


def residual_sq_oracle(A, b, x) -> float:
    """||Ax - b||^2 computed independently of the package."""
    total = 0.0
    for k in range(len(A)):
        acc = -b[k]
        for i in range(len(A[k])):
            acc += A[k][i] * x[i]
        total += acc * acc
    return total


def eigen_residual_sq_oracle(A, lam, x) -> float:
    """||Ax - lambda x||^2 computed independently of the package."""
    total = 0.0
    for k in range(len(A)):
        acc = -lam * x[k]
        for i in range(len(A[k])):
            acc += A[k][i] * x[i]
        total += acc * acc
    return total


def dense_energy_oracle(dense, offset, bits) -> float:
    """Energy of an upper-triangular dense matrix, written plainly."""
    energy = offset
    n = len(dense)
    for i in range(n):
        if bits[i]:
            energy += dense[i][i]
            for j in range(i + 1, n):
                if bits[j]:
                    energy += dense[i][j]
    return energy
