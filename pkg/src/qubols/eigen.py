"""Eigenpair objective ||Ax - lambda x||^2 as a pseudo-Boolean polynomial
and its reduction to a QUBO.

The objective is assembled by symbolic expansion: each residual component
sum_i a_{k,i} x_i - lambda x_k is a polynomial of degree <= 2 over the
encoded bits (lambda bits times x bits), and squaring and summing over k
gives a multilinear polynomial of degree <= 4. Expanding the definition
directly, rather than transcribing a precomputed coefficient table, makes
the evaluation-equality contract (polynomial value == residual of the
decoded values, at every bitstring) hold by construction.

Quadratization happens in two stages:

1. Quartic elimination: repeatedly pick the variable pair occurring in the
   most degree->=3 terms (among pairs present in some quartic; ties go to
   the lowest index pair), introduce an auxiliary w with the
   product-enforcing penalty M (ab - 2aw - 2bw + 3w), and rewrite every
   term containing the pair. The penalty magnitude
   M = 1 + 2 * sum |coefficients of terms containing the pair| can never
   be bought off.

2. Cubic elimination by minimum selection: each remaining term a*xyz is
   replaced, with a fresh auxiliary w per term, by
       a < 0:  a w (x + y + z - 2)
       a > 0:  a {w (x + y + z - 1) + (xy + yz + zx) - (x + y + z) + 1}
   For every assignment of (x, y, z), minimizing over w recovers a*xyz.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Literal, Optional

from .encoding import (
    EncodingConfig,
    DecodedSolution,
    LAMBDA_SIGNS,
    VariableRegistry,
)
from .errors import ConfigurationError, UnsupportedDegreeError
from .linsys import _as_matrix
from .model import PseudoBooleanPolynomial, QuboProblem

#: Default pre-reduction register size up to which exhaustive verification
#: of the assembled polynomial is considered tractable.
VERIFY_QUBIT_CAP = 20


@dataclass(frozen=True)
class EigenProblem:
    """Find representable (lambda, x) with A x = lambda x."""

    A: tuple[tuple[float, ...], ...]
    x_config: EncodingConfig
    lambda_config: EncodingConfig
    lambda_sign: Literal["positive", "negative", "both"] = "positive"

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _as_matrix(self.A))
        if self.lambda_sign not in LAMBDA_SIGNS:
            raise ConfigurationError(f"unknown lambda_sign {self.lambda_sign!r}")

    @property
    def n(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class ReductionPlan:
    """Record of how a polynomial was brought down to quadratic.

    ``substitutions`` lists the quartic-stage pair replacements as
    ((a, b), w, M): auxiliary w stands for the product a*b, enforced by a
    penalty of magnitude M. ``cubic_rewrites`` lists the minimum-selection
    rewrites as (term key, branch, w) with branch "negative" or
    "positive" per the sign of the coefficient.
    """

    substitutions: tuple[tuple[tuple[int, int], int, float], ...] = ()
    cubic_rewrites: tuple[tuple[tuple[int, int, int], str, int], ...] = ()

    @property
    def num_aux(self) -> int:
        return len(self.substitutions) + len(self.cubic_rewrites)


def _poly_mul(t1: dict, t2: dict) -> dict:
    out: dict[tuple[int, ...], float] = {}
    for k1, c1 in t1.items():
        for k2, c2 in t2.items():
            key = tuple(sorted(set(k1) | set(k2)))
            if len(key) > 4:
                raise UnsupportedDegreeError(
                    f"product term {key} exceeds the supported degree 4"
                )
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def assemble_eigen_poly(
    problem: EigenProblem,
) -> tuple[PseudoBooleanPolynomial, VariableRegistry]:
    """Expand ||Ax - lambda x||^2 over the encoded bits.

    The returned polynomial evaluates, at every bitstring, to the squared
    residual of the decoded (lambda, x) pair; encoding scale factors are
    folded into the bit weights.
    """
    registry = VariableRegistry(
        n=problem.n,
        config=problem.x_config,
        lambda_config=problem.lambda_config,
        lambda_sign=problem.lambda_sign,
    )
    cx = float(problem.x_config.scale_c)
    cl = float(problem.lambda_config.scale_c)
    g = registry.group_size
    x_lin = []
    for i in range(problem.n):
        x_lin.append(
            {(i * g + k,): w / cx for k, w in enumerate(registry.x_weights())}
        )
    lam_lin = {
        (registry.num_x_qubits + k,): w / cl
        for k, w in enumerate(registry.lambda_weights)
    }

    total: dict[tuple[int, ...], float] = {}
    for k in range(problem.n):
        row = problem.A[k]
        residual: dict[tuple[int, ...], float] = {}
        for i in range(problem.n):
            a = row[i]
            if a == 0.0:
                continue
            for key, w in x_lin[i].items():
                residual[key] = residual.get(key, 0.0) + a * w
        for key, c in _poly_mul(lam_lin, x_lin[k]).items():
            residual[key] = residual.get(key, 0.0) - c
        for key, c in _poly_mul(residual, residual).items():
            total[key] = total.get(key, 0.0) + c
    poly = PseudoBooleanPolynomial(num_vars=registry.total_qubits, terms=total)
    return poly, registry


def _select_pair(terms: dict) -> Optional[tuple[int, int]]:
    """Pair to substitute next: most frequent in degree->=3 terms among
    pairs appearing in some quartic; ties to the lowest index pair."""
    candidates: set[tuple[int, int]] = set()
    for key in terms:
        if len(key) == 4:
            candidates.update(combinations(key, 2))
    if not candidates:
        return None
    counts: dict[tuple[int, int], int] = {}
    for key in terms:
        if len(key) >= 3:
            for pair in combinations(key, 2):
                if pair in candidates:
                    counts[pair] = counts.get(pair, 0) + 1
    return max(candidates, key=lambda pr: (counts.get(pr, 0), (-pr[0], -pr[1])))


def quadratize(poly: PseudoBooleanPolynomial) -> tuple[QuboProblem, ReductionPlan]:
    """Reduce a degree-<=4 polynomial to a QUBO over an extended register.

    Guarantees: the QUBO minimum equals the polynomial minimum, and for
    every assignment of the original variables the minimum over auxiliary
    assignments equals the polynomial's value there. An already-quadratic
    polynomial is returned unchanged with an empty plan.
    """
    if poly.degree > 4:
        raise UnsupportedDegreeError(
            f"cannot quadratize degree {poly.degree}; the supported maximum is 4"
        )
    terms = dict(poly.terms)
    next_var = poly.num_vars
    substitutions: list[tuple[tuple[int, int], int, float]] = []

    while True:
        pair = _select_pair(terms)
        if pair is None:
            break
        a, b = pair
        touched = [key for key in terms if a in key and b in key]
        magnitude = 1.0 + 2.0 * sum(abs(terms[key]) for key in touched)
        w = next_var
        next_var += 1
        for key in touched:
            coeff = terms.pop(key)
            new_key = tuple(sorted((set(key) - {a, b}) | {w}))
            terms[new_key] = terms.get(new_key, 0.0) + coeff
        # penalty M (ab - 2aw - 2bw + 3w): zero iff w == a*b
        for key, val in (
            ((a, b), magnitude),
            ((a, w), -2.0 * magnitude),
            ((b, w), -2.0 * magnitude),
            ((w,), 3.0 * magnitude),
        ):
            terms[key] = terms.get(key, 0.0) + val
        substitutions.append(((a, b), w, magnitude))

    cubic_rewrites: list[tuple[tuple[int, int, int], str, int]] = []
    for key in sorted(k for k in terms if len(k) == 3):
        coeff = terms.pop(key)
        if coeff == 0.0:
            continue
        x, y, z = key
        w = next_var
        next_var += 1
        updates: list[tuple[tuple[int, ...], float]]
        if coeff < 0.0:
            branch = "negative"
            updates = [
                ((x, w), coeff),
                ((y, w), coeff),
                ((z, w), coeff),
                ((w,), -2.0 * coeff),
            ]
        else:
            branch = "positive"
            updates = [
                ((x, w), coeff),
                ((y, w), coeff),
                ((z, w), coeff),
                ((w,), -coeff),
                ((x, y), coeff),
                ((y, z), coeff),
                ((x, z), coeff),
                ((x,), -coeff),
                ((y,), -coeff),
                ((z,), -coeff),
                ((), coeff),
            ]
        for ukey, val in updates:
            terms[ukey] = terms.get(ukey, 0.0) + val
        cubic_rewrites.append((key, branch, w))

    offset = 0.0
    coeffs: dict[tuple[int, int], float] = {}
    for key, coeff in terms.items():
        if len(key) == 0:
            offset += coeff
        elif len(key) == 1:
            coeffs[(key[0], key[0])] = coeffs.get((key[0], key[0]), 0.0) + coeff
        elif len(key) == 2:
            coeffs[key] = coeffs.get(key, 0.0) + coeff
        else:  # pragma: no cover - stages above eliminate everything cubic+
            raise UnsupportedDegreeError(f"unreduced term {key} survived quadratization")
    qubo = QuboProblem(num_vars=max(next_var, 1), coefficients=coeffs, offset=offset)
    plan = ReductionPlan(
        substitutions=tuple(substitutions),
        cubic_rewrites=tuple(cubic_rewrites),
    )
    return qubo, plan


def build_eigen_qubo(
    problem: EigenProblem,
) -> tuple[QuboProblem, VariableRegistry, ReductionPlan]:
    """Assemble the eigenpair polynomial and quadratize it.

    Ground states of the QUBO, projected onto the pre-reduction register
    and decoded, are exactly the representable pairs (lambda, x) with
    A x = lambda x - including the trivial x = 0 family, which is filtered
    after the fact by :func:`filter_nontrivial` rather than penalized.
    """
    poly, registry = assemble_eigen_poly(problem)
    qubo, plan = quadratize(poly)
    registry = replace(registry, num_aux=qubo.num_vars - registry.total_qubits)
    return qubo, registry, plan


def filter_nontrivial(solutions: list[DecodedSolution]) -> list[DecodedSolution]:
    """Drop solutions whose x is the zero vector, preserving order."""
    return [sol for sol in solutions if not sol.is_trivial()]


def eigen_residual_sq(A, lam: float, x) -> float:
    """||A x - lambda x||^2 for plain sequences."""
    total = 0.0
    for k, row in enumerate(A):
        r = -float(lam) * float(x[k])
        for i, a in enumerate(row):
            r += float(a) * float(x[i])
        total += r * r
    return total
