"""QUBO, Ising, and pseudo-Boolean polynomial representations.

Conventions used throughout the package:

- QUBO over binary variables x_i in {0, 1}:
      f(x) = offset + sum_i Q[i,i] x_i + sum_{i<j} Q[i,j] x_i x_j
  Coefficients are stored sparsely as an upper-triangular map; an absent
  pair has coefficient 0.

- Ising model over spins s_i in {-1, +1}, with the leading minus signs:
      H(s) = offset - sum_i h_i s_i - sum_{i<j} J[i,j] s_i s_j

- The two are related by the substitution s = 2x - 1.

- Pseudo-Boolean polynomials are multilinear (q^2 = q is applied when a
  term is inserted) with degree capped at 4, which is the highest degree
  the eigenpair objective produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DimensionError, UnsupportedDegreeError

#: Absolute tolerance used for energy comparisons on real-valued problems.
ENERGY_ATOL = 1e-9


def _check_bits(bits, num_vars: int) -> None:
    if len(bits) != num_vars:
        raise DimensionError(
            f"bit vector has length {len(bits)}, expected {num_vars}"
        )
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit vector entries must be 0 or 1, got {b!r}")


@dataclass
class QuboProblem:
    """Sparse quadratic unconstrained binary optimization problem.

    Parameters
    ----------
    num_vars : int
        Number of binary variables N.
    coefficients : dict[tuple[int, int], float]
        Map from index pair (i, j) with i <= j to the coefficient; the
        diagonal holds linear terms, off-diagonal pairs quadratic terms.
        Pairs given as (j, i) are folded into canonical order and exact
        zeros are dropped.
    offset : float
        Constant added to every energy.
    """

    num_vars: int
    coefficients: dict[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise DimensionError(f"num_vars must be >= 1, got {self.num_vars}")
        offset = float(self.offset)
        if not math.isfinite(offset):
            raise ValueError("offset must be finite")
        canon: dict[tuple[int, int], float] = {}
        for key, value in self.coefficients.items():
            i, j = key
            if i > j:
                i, j = j, i
            if not (0 <= i <= j < self.num_vars):
                raise DimensionError(
                    f"coefficient key {key} out of range for {self.num_vars} variables"
                )
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"coefficient for {key} must be finite")
            canon[(i, j)] = canon.get((i, j), 0.0) + value
        self.coefficients = {k: v for k, v in canon.items() if v != 0.0}
        self.offset = offset + 0.0  # normalizes -0.0

    def coefficient(self, i: int, j: int) -> float:
        """Coefficient for pair (i, j) in either order; 0.0 when absent."""
        if i > j:
            i, j = j, i
        return self.coefficients.get((i, j), 0.0)

    def to_dense(self):
        """Upper-triangular dense matrix view of the coefficients."""
        import numpy as np

        q = np.zeros((self.num_vars, self.num_vars))
        for (i, j), v in self.coefficients.items():
            q[i, j] = v
        return q

    @classmethod
    def from_dense(cls, matrix, offset: float = 0.0) -> "QuboProblem":
        """Build from a square matrix, folding the lower triangle upward."""
        n = len(matrix)
        coeffs: dict[tuple[int, int], float] = {}
        for i in range(n):
            if len(matrix[i]) != n:
                raise DimensionError("matrix must be square")
            coeffs[(i, i)] = float(matrix[i][i])
            for j in range(i + 1, n):
                coeffs[(i, j)] = float(matrix[i][j]) + float(matrix[j][i])
        return cls(num_vars=n, coefficients=coeffs, offset=offset)


@dataclass
class IsingProblem:
    """Ising model H(s) = offset - sum_i h_i s_i - sum_{i<j} J[i,j] s_i s_j."""

    num_vars: int
    h: tuple[float, ...] = ()
    J: dict[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise DimensionError(f"num_vars must be >= 1, got {self.num_vars}")
        if not self.h:
            self.h = (0.0,) * self.num_vars
        self.h = tuple(float(v) for v in self.h)
        if len(self.h) != self.num_vars:
            raise DimensionError(
                f"h has length {len(self.h)}, expected {self.num_vars}"
            )
        if not all(math.isfinite(v) for v in self.h):
            raise ValueError("h entries must be finite")
        canon: dict[tuple[int, int], float] = {}
        for (i, j), value in self.J.items():
            if i > j:
                i, j = j, i
            if not (0 <= i < j < self.num_vars):
                raise DimensionError(f"coupling key ({i},{j}) is not strictly upper-triangular")
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"coupling for ({i},{j}) must be finite")
            canon[(i, j)] = canon.get((i, j), 0.0) + value
        self.J = {k: v for k, v in canon.items() if v != 0.0}
        self.offset = float(self.offset)
        if not math.isfinite(self.offset):
            raise ValueError("offset must be finite")


def qubo_energy(q: QuboProblem, bits) -> float:
    """Energy offset + sum_i Q[i,i] x_i + sum_{i<j} Q[i,j] x_i x_j."""
    _check_bits(bits, q.num_vars)
    energy = q.offset
    for (i, j), v in q.coefficients.items():
        if bits[i] and bits[j]:
            energy += v
    return energy


def ising_energy(problem: IsingProblem, spins) -> float:
    """Energy of a +/-1 spin vector under the leading-minus-sign convention."""
    if len(spins) != problem.num_vars:
        raise DimensionError(
            f"spin vector has length {len(spins)}, expected {problem.num_vars}"
        )
    for s in spins:
        if s not in (-1, 1):
            raise ValueError(f"spin entries must be -1 or +1, got {s!r}")
    energy = problem.offset
    for i, hi in enumerate(problem.h):
        energy -= hi * spins[i]
    for (i, j), jij in problem.J.items():
        energy -= jij * spins[i] * spins[j]
    return energy


def qubo_to_ising(q: QuboProblem) -> IsingProblem:
    """Convert a QUBO to the equivalent Ising problem via x = (s + 1)/2.

    Energies agree exactly on corresponding assignments: for every binary
    vector x and its spin image s = 2x - 1,
    qubo_energy(q, x) == ising_energy(result, s).
    """
    n = q.num_vars
    h = [0.0] * n
    J: dict[tuple[int, int], float] = {}
    offset = q.offset
    for (i, j), v in q.coefficients.items():
        if i == j:
            # v * x_i = v * (s_i + 1) / 2
            h[i] -= v / 2.0
            offset += v / 2.0
        else:
            # v * x_i x_j = v * (s_i + 1)(s_j + 1) / 4
            J[(i, j)] = J.get((i, j), 0.0) - v / 4.0
            h[i] -= v / 4.0
            h[j] -= v / 4.0
            offset += v / 4.0
    return IsingProblem(num_vars=n, h=tuple(h), J=J, offset=offset)


def ising_to_qubo(problem: IsingProblem) -> QuboProblem:
    """Inverse of :func:`qubo_to_ising`; round trips preserve every energy."""
    n = problem.num_vars
    coeffs: dict[tuple[int, int], float] = {}
    offset = problem.offset
    for i, hi in enumerate(problem.h):
        # -h_i s_i = -h_i (2 x_i - 1)
        coeffs[(i, i)] = coeffs.get((i, i), 0.0) - 2.0 * hi
        offset += hi
    for (i, j), jij in problem.J.items():
        # -J_ij s_i s_j = -J_ij (2x_i - 1)(2x_j - 1)
        coeffs[(i, j)] = coeffs.get((i, j), 0.0) - 4.0 * jij
        coeffs[(i, i)] = coeffs.get((i, i), 0.0) + 2.0 * jij
        coeffs[(j, j)] = coeffs.get((j, j), 0.0) + 2.0 * jij
        offset -= jij
    return QuboProblem(num_vars=n, coefficients=coeffs, offset=offset)


def _canonical_term(key) -> tuple[int, ...]:
    return tuple(sorted(set(int(i) for i in key)))


@dataclass
class PseudoBooleanPolynomial:
    """Multilinear polynomial of degree <= 4 over binary variables.

    Keys are sorted, duplicate-free index tuples; the empty tuple is the
    constant term. Inserting a key such as (a, a, b) collapses to (a, b)
    because q^2 = q for binary q.
    """

    num_vars: int
    terms: dict[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise DimensionError(f"num_vars must be >= 0, got {self.num_vars}")
        canon: dict[tuple[int, ...], float] = {}
        for key, value in self.terms.items():
            ckey = _canonical_term(key)
            if len(ckey) > 4:
                raise UnsupportedDegreeError(
                    f"term {key} has degree {len(ckey)}; the supported maximum is 4"
                )
            if ckey and not (0 <= ckey[0] and ckey[-1] < self.num_vars):
                raise DimensionError(
                    f"term {key} out of range for {self.num_vars} variables"
                )
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"coefficient for {key} must be finite")
            canon[ckey] = canon.get(ckey, 0.0) + value
        self.terms = {k: v for k, v in canon.items() if v != 0.0}

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)


def poly_energy(p: PseudoBooleanPolynomial, bits) -> float:
    """Evaluate the polynomial at a binary assignment."""
    _check_bits(bits, p.num_vars)
    energy = 0.0
    for key, coeff in p.terms.items():
        if all(bits[i] for i in key):
            energy += coeff
    return energy


@dataclass(frozen=True)
class SampleRecord:
    """One sampled assignment with its energy and how often it occurred."""

    bits: tuple[int, ...]
    energy: float
    occurrences: int


@dataclass
class SampleSet:
    """Collection of sample records for one problem."""

    num_vars: int
    records: tuple[SampleRecord, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise DimensionError(f"num_vars must be >= 1, got {self.num_vars}")
        records = []
        for rec in self.records:
            if not isinstance(rec, SampleRecord):
                rec = SampleRecord(tuple(rec[0]), float(rec[1]), int(rec[2]))
            if len(rec.bits) != self.num_vars:
                raise DimensionError(
                    f"record bits length {len(rec.bits)} != {self.num_vars}"
                )
            if rec.occurrences < 1:
                raise ValueError("occurrences must be positive")
            if not math.isfinite(rec.energy):
                raise ValueError("record energy must be finite")
            records.append(rec)
        self.records = tuple(records)

    def __len__(self) -> int:
        return len(self.records)

    def min_energy(self) -> float:
        if not self.records:
            raise ValueError("sample set is empty")
        return min(rec.energy for rec in self.records)

    def total_occurrences(self) -> int:
        return sum(rec.occurrences for rec in self.records)

    def ground(self, tol: float = ENERGY_ATOL) -> "SampleSet":
        """Records within ``tol`` of the minimum energy present.

        Sorted by descending occurrences, ties broken lexicographically
        by bitstring.
        """
        if not self.records:
            raise ValueError("cannot extract ground states from an empty sample set")
        if not (math.isfinite(tol) and tol >= 0.0):
            raise ValueError(f"tolerance must be finite and >= 0, got {tol!r}")
        lowest = self.min_energy()
        kept = [rec for rec in self.records if rec.energy <= lowest + tol]
        kept.sort(key=lambda rec: (-rec.occurrences, rec.bits))
        return SampleSet(num_vars=self.num_vars, records=tuple(kept))
