"""QUBO assembly for the least-squares objective ||Ax - b||^2.

Substituting the binary encoding x_i = sum_g w_g q_{i,g} into
sum_k (sum_i a_{k,i} x_i - b_k)^2 yields, per row k:

- diagonal (linear) coefficients   a_{k,i}^2 w_g^2 - 2 a_{k,i} b_k w_g
- same-unknown quadratic pairs     2 a_{k,i}^2 w_{g1} w_{g2}
- cross-unknown quadratic pairs    2 a_{k,i} a_{k,j} w_{g1} w_{g2}
- constant                         b_k^2   (stored as the QUBO offset)

Model 1 uses the two-sided encoding; the pairs coupling a positive and a
negative bit of the *same* unknown are the "constrained" cross terms and
their handling is selectable (kept, zeroed, or penalized). Model 2 uses
the offset encoding, whose expansion has no such redundancy.

The QUBO body (energy minus the stored offset) attains -sum_k b_k^2
exactly at encoded solutions of Ax = b.

Accumulation order is fixed: contributions are computed per row k and
merged in ascending k, with a canonical in-row ordering, so serial and
parallel builds produce bit-identical floating-point coefficients.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

from .encoding import EncodingConfig, VariableRegistry, scaled_config
from .errors import ConfigurationError, DimensionError
from .model import QuboProblem


def _as_matrix(a) -> tuple[tuple[float, ...], ...]:
    rows = tuple(tuple(float(v) for v in row) for row in a)
    if not rows:
        raise DimensionError("matrix must have at least one row")
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DimensionError(f"matrix must be square, got row of length {len(row)} for n={n}")
        for v in row:
            if not math.isfinite(v):
                raise ValueError("matrix entries must be finite")
    return rows


@dataclass(frozen=True)
class LinearSystemProblem:
    """Square system A x = b together with the encoding of x."""

    A: tuple[tuple[float, ...], ...]
    b: tuple[float, ...]
    config: EncodingConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _as_matrix(self.A))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.b) != self.n:
            raise DimensionError(
                f"b has length {len(self.b)}, expected {self.n}"
            )
        if not all(math.isfinite(v) for v in self.b):
            raise ValueError("b entries must be finite")

    @property
    def n(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class CrossTermPolicy:
    """Handling of the same-unknown q+ q- cross terms in model 1.

    - full: keep the natural (negative) coefficients of the expansion
    - zeroed: drop the terms entirely
    - penalty: keep the natural coefficients and add a uniform positive
      value to each, discouraging simultaneous q+ / q- bits
    """

    kind: Literal["full", "zeroed", "penalty"]
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("full", "zeroed", "penalty"):
            raise ConfigurationError(f"unknown cross-term policy {self.kind!r}")
        if self.kind == "penalty" and not (self.value > 0):
            raise ConfigurationError("penalty value must be positive")

    @classmethod
    def full(cls) -> "CrossTermPolicy":
        return cls("full")

    @classmethod
    def zeroed(cls) -> "CrossTermPolicy":
        return cls("zeroed")

    @classmethod
    def penalty(cls, value: float) -> "CrossTermPolicy":
        return cls("penalty", float(value))


def registry_for(problem: LinearSystemProblem) -> VariableRegistry:
    return VariableRegistry(n=problem.n, config=problem.config)


def _row_contribution(
    problem: LinearSystemProblem,
    weights: tuple[float, ...],
    k: int,
    skip_mixed: bool,
    mixed_boundary: int,
) -> dict[tuple[int, int], float]:
    """Coefficient contributions of row k, in canonical in-row order.

    ``mixed_boundary`` > 0 marks the two-sided split point within a group;
    same-unknown pairs straddling it are the constrained cross terms and
    are omitted when ``skip_mixed`` is set.
    """
    a_row = problem.A[k]
    b_k = problem.b[k]
    g = len(weights)
    out: dict[tuple[int, int], float] = {}
    for i in range(problem.n):
        a = a_row[i]
        if a == 0.0:
            continue
        base = i * g
        a2 = a * a
        for g1 in range(g):
            w = weights[g1]
            val = a2 * w * w - 2.0 * a * b_k * w
            if val != 0.0:
                key = (base + g1, base + g1)
                out[key] = out.get(key, 0.0) + val
        for g1 in range(g):
            for g2 in range(g1 + 1, g):
                if skip_mixed and mixed_boundary and g1 < mixed_boundary <= g2:
                    continue
                val = 2.0 * a2 * weights[g1] * weights[g2]
                if val != 0.0:
                    key = (base + g1, base + g2)
                    out[key] = out.get(key, 0.0) + val
    for i in range(problem.n):
        ai = a_row[i]
        if ai == 0.0:
            continue
        for j in range(i + 1, problem.n):
            aij = ai * a_row[j]
            if aij == 0.0:
                continue
            for g1 in range(g):
                for g2 in range(g):
                    val = 2.0 * aij * weights[g1] * weights[g2]
                    if val != 0.0:
                        key = (i * g + g1, j * g + g2)
                        out[key] = out.get(key, 0.0) + val
    return out


def _merge_rows(
    parts,
    num_vars: int,
    offset: float,
) -> QuboProblem:
    acc: dict[tuple[int, int], float] = {}
    for part in parts:
        for key, val in part.items():
            acc[key] = acc.get(key, 0.0) + val
    return QuboProblem(num_vars=num_vars, coefficients=acc, offset=offset)


def _apply_penalty(
    qubo: QuboProblem,
    registry: VariableRegistry,
    value: float,
) -> QuboProblem:
    b = registry.config.bits_per_group
    g = registry.group_size
    coeffs = dict(qubo.coefficients)
    for i in range(registry.n):
        base = i * g
        for g1 in range(b):
            for g2 in range(b, 2 * b):
                key = (base + g1, base + g2)
                coeffs[key] = coeffs.get(key, 0.0) + value
    return QuboProblem(num_vars=qubo.num_vars, coefficients=coeffs, offset=qubo.offset)


def build_model1(
    problem: LinearSystemProblem,
    policy: CrossTermPolicy = CrossTermPolicy.zeroed(),
) -> tuple[QuboProblem, VariableRegistry]:
    """QUBO for ||Ax - b||^2 under the two-sided encoding."""
    return build_model1_parallel(problem, policy, workers=1)


def build_model1_parallel(
    problem: LinearSystemProblem,
    policy: CrossTermPolicy = CrossTermPolicy.zeroed(),
    workers: int = 1,
) -> tuple[QuboProblem, VariableRegistry]:
    """Same coefficient map as :func:`build_model1`, bit for bit.

    Row contributions are independent, so they are computed across
    ``workers`` threads and merged in ascending row order; the fixed
    reduction order keeps floating-point results identical to the serial
    build.
    """
    if problem.config.scheme != "two_sided":
        raise ConfigurationError(
            f"model 1 requires the two_sided encoding, got {problem.config.scheme!r}"
        )
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    registry = registry_for(problem)
    weights = problem.config.weights
    boundary = problem.config.bits_per_group
    skip_mixed = policy.kind == "zeroed"

    def row(k: int) -> dict[tuple[int, int], float]:
        return _row_contribution(problem, weights, k, skip_mixed, boundary)

    if workers == 1:
        parts = [row(k) for k in range(problem.n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(row, range(problem.n)))

    offset = 0.0
    for b_k in problem.b:
        offset += b_k * b_k
    qubo = _merge_rows(parts, registry.total_qubits, offset)
    if policy.kind == "penalty":
        qubo = _apply_penalty(qubo, registry, policy.value)
    return qubo, registry


def build_model2(problem: LinearSystemProblem) -> tuple[QuboProblem, VariableRegistry]:
    """QUBO for ||Ax - b||^2 under the qubit-halving offset encoding."""
    if problem.config.scheme != "offset":
        raise ConfigurationError(
            f"model 2 requires the offset encoding, got {problem.config.scheme!r}"
        )
    registry = registry_for(problem)
    weights = problem.config.weights
    parts = [
        _row_contribution(problem, weights, k, skip_mixed=False, mixed_boundary=0)
        for k in range(problem.n)
    ]
    offset = 0.0
    for b_k in problem.b:
        offset += b_k * b_k
    return _merge_rows(parts, registry.total_qubits, offset), registry


def apply_scaling(problem: LinearSystemProblem, c: int) -> LinearSystemProblem:
    """Rescale to the integer-bit system (A, c*b); decode divides by c.

    Solving the scaled system in integer bits and dividing the decoded
    vector by c recovers solutions of the original system to within the
    chosen accuracy. ``c == 1`` returns the problem unchanged.
    """
    if not isinstance(c, int) or c < 1:
        raise ValueError(f"scaling factor must be a positive integer, got {c!r}")
    if c == 1:
        return problem
    return LinearSystemProblem(
        A=problem.A,
        b=tuple(c * v for v in problem.b),
        config=scaled_config(problem.config, c),
    )


def estimate_cost(n: int, m: int) -> tuple[int, int, int]:
    """Major computing cost of the cross-unknown quadratic assembly.

    Returns, as exact integers:
    - pair count            n(n-1)/2
    - per-pair total        (4m+1) + n(n-1)/2
    - grand total           (4m+1)n + n^2(n-1)/2
    where m is the exponent half-width of a symmetric bit range [-m, m].
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    pairs = n * (n - 1) // 2
    per_pair = (4 * m + 1) + pairs
    grand = (4 * m + 1) * n + n * n * (n - 1) // 2
    return pairs, per_pair, grand


def residual_norm_sq(A, b, x) -> float:
    """||A x - b||^2 for plain sequences."""
    total = 0.0
    for k, row in enumerate(A):
        r = -float(b[k])
        for i, a in enumerate(row):
            r += float(a) * float(x[i])
        total += r * r
    return total
