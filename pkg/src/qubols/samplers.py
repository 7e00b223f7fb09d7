"""Classical low-energy search for QUBO problems.

Two samplers are provided: an exact exhaustive search for small problems
(the ground-truth oracle the tests lean on) and a seeded single-flip
Metropolis simulated annealer with a geometric inverse-temperature
schedule. Annealing reads are independent restarts; read r draws its
randomness from a stream derived from (seed, r), so results do not depend
on how reads are scheduled and identical inputs reproduce identical
sample sets byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .model import ENERGY_ATOL, QuboProblem, SampleRecord, SampleSet

#: Hard variable-count cap for exhaustive search (2^25 evaluations).
EXHAUSTIVE_CAP = 25

_CHUNK_BITS = 16  # evaluate exhaustive search in chunks of 2^16 states


@dataclass(frozen=True)
class AnnealSchedule:
    """Simulated-annealing run parameters.

    ``reads`` independent restarts of ``sweeps`` full single-flip sweeps
    each, with inverse temperature interpolated geometrically from
    ``beta_start`` to ``beta_end``.
    """

    sweeps: int = 1000
    beta_start: float = 0.1
    beta_end: float = 10.0
    reads: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be >= 1, got {self.sweeps}")
        if self.reads < 1:
            raise ValueError(f"reads must be >= 1, got {self.reads}")
        if not (0 < self.beta_start < self.beta_end):
            raise ValueError(
                f"need 0 < beta_start < beta_end, got {self.beta_start}, {self.beta_end}"
            )

    def betas(self) -> np.ndarray:
        return np.geomspace(self.beta_start, self.beta_end, self.sweeps)


def _dense_arrays(q: QuboProblem) -> tuple[np.ndarray, np.ndarray]:
    """(diag, symmetric coupling matrix with zero diagonal)."""
    n = q.num_vars
    diag = np.zeros(n)
    coup = np.zeros((n, n))
    for (i, j), v in q.coefficients.items():
        if i == j:
            diag[i] = v
        else:
            coup[i, j] = v
            coup[j, i] = v
    return diag, coup


def _chunk_energies(q_upper: np.ndarray, diag: np.ndarray, bits: np.ndarray) -> np.ndarray:
    return bits @ diag + np.einsum("si,si->s", bits @ q_upper, bits)


def _bit_matrix(start: int, count: int, n: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(np.float64)


def solve_exhaustive(q: QuboProblem, energy_margin: float = 0.0) -> SampleSet:
    """Enumerate every assignment and return the low-energy window.

    Keeps all states whose energy is within ``energy_margin`` (default:
    ground states only, up to the energy tolerance) of the exact minimum,
    each with occurrence count 1. Capped at 25 variables.
    """
    n = q.num_vars
    if n > EXHAUSTIVE_CAP:
        raise CapacityError(
            f"exhaustive search supports at most {EXHAUSTIVE_CAP} variables, got {n}"
        )
    if not (math.isfinite(energy_margin) and energy_margin >= 0.0):
        raise ValueError(f"energy_margin must be finite and >= 0, got {energy_margin!r}")
    diag, coup = _dense_arrays(q)
    q_upper = np.triu(coup)  # i<j entries only; diagonal handled separately
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)

    minimum = math.inf
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        energies = _chunk_energies(q_upper, diag, _bit_matrix(start, count, n))
        low = float(energies.min())
        if low < minimum:
            minimum = low

    window = minimum + energy_margin + ENERGY_ATOL
    records = []
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        bits = _bit_matrix(start, count, n)
        energies = _chunk_energies(q_upper, diag, bits)
        for row in np.nonzero(energies <= window)[0]:
            records.append(
                SampleRecord(
                    bits=tuple(int(v) for v in bits[row]),
                    energy=float(energies[row]) + q.offset,
                    occurrences=1,
                )
            )
    records.sort(key=lambda rec: (rec.energy, rec.bits))
    return SampleSet(num_vars=n, records=tuple(records))


def solve_sa(q: QuboProblem, schedule: AnnealSchedule = AnnealSchedule()) -> SampleSet:
    """Simulated annealing; one record per read, deduplicated with counts.

    Reproducibility contract: identical (problem, schedule) pairs produce
    identical sample sets; each read's randomness is derived from
    (seed, read index) alone, so results do not depend on batching. The
    incremental energy bookkeeping is cross-checked against a full
    re-evaluation of every final state.
    """
    from . import _sa_kernel

    n = q.num_vars
    diag, coup = _dense_arrays(q)
    q_upper = np.triu(coup)
    betas = schedule.betas()
    seed = np.uint64(schedule.seed & 0xFFFFFFFFFFFFFFFF)

    states = np.empty((schedule.reads, n), dtype=np.int8)
    tracked = np.zeros(schedule.reads)
    _sa_kernel.anneal_block(betas, diag, coup, seed, 0, states, tracked)

    exact = _chunk_energies(q_upper, diag, states.astype(np.float64))
    drift = float(np.max(np.abs(tracked - exact)))
    if drift > ENERGY_ATOL:
        raise RuntimeError(
            f"incremental annealing energies drifted {drift} from re-evaluation"
        )

    counts: dict[tuple[int, ...], int] = {}
    energies_by_bits: dict[tuple[int, ...], float] = {}
    for r in range(schedule.reads):
        key = tuple(int(v) for v in states[r])
        counts[key] = counts.get(key, 0) + 1
        energies_by_bits[key] = float(exact[r]) + q.offset

    records = [
        SampleRecord(bits=bits, energy=energies_by_bits[bits], occurrences=cnt)
        for bits, cnt in counts.items()
    ]
    records.sort(key=lambda rec: (rec.energy, rec.bits))
    return SampleSet(num_vars=n, records=tuple(records))


def ground_states(samples: SampleSet, tol: float = ENERGY_ATOL) -> SampleSet:
    """Records within ``tol`` of the minimum, sorted by occurrences."""
    return samples.ground(tol)
