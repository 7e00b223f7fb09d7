"""Compile/solve/decode/verify workflows over problem documents.

These functions are the single implementation behind both the service
endpoints and (through the service) the CLI. Energies reported in sample
records include the stored constant offset; table renderers subtract it
to match the annealer-report convention where the submitted matrix has
no constant term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .eigen import (
    VERIFY_QUBIT_CAP,
    ReductionPlan,
    assemble_eigen_poly,
    build_eigen_qubo,
    eigen_residual_sq,
)
from .encoding import DecodedSolution, VariableRegistry
from .errors import CapacityError, ConfigurationError, DimensionError
from .exports import export_coordinate, export_vendor_script, parse_coordinate
from .linsys import build_model1, build_model2, residual_norm_sq
from .model import (
    ENERGY_ATOL,
    QuboProblem,
    SampleSet,
    poly_energy,
    qubo_energy,
    qubo_to_ising,
    ising_energy,
    ising_to_qubo,
)
from .samplers import AnnealSchedule, solve_exhaustive, solve_sa
from .schemas import CheckOutcome, ProblemDocument


@dataclass(frozen=True)
class CompiledProblem:
    qubo: QuboProblem
    registry: VariableRegistry
    document: ProblemDocument
    plan: Optional[ReductionPlan] = None


def compile_document(doc: ProblemDocument) -> CompiledProblem:
    """Build the QUBO described by a problem document."""
    if doc.kind == "linsys":
        problem = doc.to_linear_system()
        if doc.model == 1:
            qubo, registry = build_model1(problem, doc.policy())
        else:
            qubo, registry = build_model2(problem)
        return CompiledProblem(qubo=qubo, registry=registry, document=doc)
    eig = doc.to_eigen_problem()
    qubo, registry, plan = build_eigen_qubo(eig)
    return CompiledProblem(qubo=qubo, registry=registry, document=doc, plan=plan)


def export_text(
    compiled: CompiledProblem,
    fmt: str,
    include_zeros: bool,
    num_reads: int = 1000,
) -> str:
    if fmt == "coord":
        return export_coordinate(compiled.qubo, include_zeros)
    if fmt == "vendor":
        return export_vendor_script(compiled.qubo, include_zeros, num_reads)
    raise ConfigurationError(f"unknown export format {fmt!r}")


def decode_with_residual(compiled: CompiledProblem, bits) -> DecodedSolution:
    """Decode a register bitstring and attach the problem-space residual."""
    decoded = compiled.registry.decode(bits)
    doc = compiled.document
    if doc.kind == "linsys":
        scale = compiled.registry.config.scale_c
        b_orig = [v / scale for v in doc.b]
        res_sq = residual_norm_sq(doc.A, b_orig, decoded.x)
    else:
        res_sq = eigen_residual_sq(doc.A, decoded.eigenvalue, decoded.x)
    return decoded.with_residual(math.sqrt(max(res_sq, 0.0)))


def parse_bitstring(text: str, registry: VariableRegistry) -> tuple[int, ...]:
    """Parse a 0/1 string against a registry.

    Accepts either the full register length or, when the registry carries
    auxiliary reduction bits, the pre-reduction prefix (auxiliaries are
    irrelevant to decoding and get zero-padded).
    """
    cleaned = text.strip().replace(" ", "")
    if any(ch not in "01" for ch in cleaned):
        raise ValueError(f"bitstring must contain only 0/1, got {text!r}")
    bits = tuple(int(ch) for ch in cleaned)
    total = registry.total_qubits
    core = total - registry.num_aux
    if len(bits) == total:
        return bits
    if len(bits) == core:
        return bits + (0,) * registry.num_aux
    expected = str(total) if registry.num_aux == 0 else f"{total} (or {core} without auxiliaries)"
    raise DimensionError(f"bitstring has {len(bits)} bits, the register has {expected}")


@dataclass(frozen=True)
class SolveOutcome:
    compiled: CompiledProblem
    samples: SampleSet
    window: SampleSet
    solutions: list[DecodedSolution]
    total_reads: int


def solve_document(
    doc: ProblemDocument,
    sampler: str = "exhaustive",
    reads: int = 1000,
    sweeps: int = 1000,
    seed: int = 0,
    beta_start: float = 0.1,
    beta_end: float = 10.0,
    margin: float = 0.0,
) -> SolveOutcome:
    """Compile, sample, and decode the low-energy window."""
    compiled = compile_document(doc)
    if sampler == "exhaustive":
        samples = solve_exhaustive(compiled.qubo, energy_margin=margin)
        window = samples.ground(tol=margin + ENERGY_ATOL)
        total = 1 << compiled.qubo.num_vars
    elif sampler == "sa":
        schedule = AnnealSchedule(
            sweeps=sweeps, beta_start=beta_start, beta_end=beta_end, reads=reads, seed=seed
        )
        samples = solve_sa(compiled.qubo, schedule)
        window = samples.ground(tol=margin + ENERGY_ATOL)
        total = schedule.reads
    else:
        raise ConfigurationError(f"unknown sampler {sampler!r}")
    solutions = [decode_with_residual(compiled, rec.bits) for rec in window.records]
    return SolveOutcome(
        compiled=compiled,
        samples=samples,
        window=window,
        solutions=solutions,
        total_reads=total,
    )


# ---- verification ------------------------------------------------------


def _all_bitstrings(n: int):
    for state in range(1 << n):
        yield tuple((state >> i) & 1 for i in range(n))


def _verify_linsys(doc: ProblemDocument, checks: list[CheckOutcome], cap: int) -> None:
    compiled = compile_document(doc)
    qubo, registry = compiled.qubo, compiled.registry
    n_bits = qubo.num_vars
    if n_bits > cap:
        raise CapacityError(
            f"verification enumerates 2^{n_bits} states; cap is 2^{cap}"
        )
    samples = solve_exhaustive(qubo)

    worst = 0.0
    for rec in samples.records:
        worst = max(worst, abs(qubo_energy(qubo, rec.bits) - rec.energy))
    checks.append(
        CheckOutcome(
            name="sample-energy-reevaluation",
            passed=worst <= ENERGY_ATOL,
            detail=f"max |recorded - recomputed| = {worst:.3g}",
        )
    )

    # residual identity: full energy equals the squared residual of the
    # decoded point, for every state under full/model-2 assembly and for
    # representation-consistent states otherwise
    scale = registry.config.scale_c
    b_orig = [v / scale for v in doc.b]
    full_everywhere = doc.model == 2 or (doc.model == 1 and doc.cross_policy == "full")
    boundary = registry.config.bits_per_group
    group = registry.group_size
    ok = True
    detail = ""
    for bits in _all_bitstrings(n_bits):
        if not full_everywhere:
            mixed = False
            for i in range(registry.n):
                base = i * group
                plus = any(bits[base + g] for g in range(boundary))
                minus = any(bits[base + g] for g in range(boundary, group))
                if plus and minus:
                    mixed = True
                    break
            if mixed:
                continue
        decoded = registry.decode(bits)
        scaled_x = [v * scale for v in decoded.x]
        res_sq = residual_norm_sq(doc.A, doc.b, scaled_x)
        if abs(qubo_energy(qubo, bits) - res_sq) > ENERGY_ATOL:
            ok = False
            detail = f"state {bits} energy != residual^2"
            break
    checks.append(CheckOutcome(name="residual-identity", passed=ok, detail=detail))

    ground = samples.ground()
    ok = True
    detail = ""
    for rec in ground.records:
        decoded = decode_with_residual(compiled, rec.bits)
        if abs(decoded.residual**2 - rec.energy) > 1e-6:
            ok = False
            detail = f"ground state {rec.bits} decodes with residual {decoded.residual}"
            break
    checks.append(CheckOutcome(name="ground-decode-residual", passed=ok, detail=detail))

    ising = qubo_to_ising(qubo)
    back = ising_to_qubo(ising)
    ok = True
    detail = ""
    for bits in _all_bitstrings(min(n_bits, 12)):
        padded = bits + (0,) * (n_bits - len(bits))
        spins = tuple(2 * b - 1 for b in padded)
        e_q = qubo_energy(qubo, padded)
        if abs(e_q - ising_energy(ising, spins)) > ENERGY_ATOL or abs(
            e_q - qubo_energy(back, padded)
        ) > ENERGY_ATOL:
            ok = False
            detail = f"state {padded} disagrees across representations"
            break
    checks.append(CheckOutcome(name="ising-round-trip", passed=ok, detail=detail))

    reparsed = parse_coordinate(export_coordinate(qubo, include_zero_entries=False))
    checks.append(
        CheckOutcome(
            name="export-round-trip",
            passed=reparsed == qubo,
            detail="coordinate export reparses exactly" if reparsed == qubo else "mismatch",
        )
    )


def _verify_eigen(doc: ProblemDocument, checks: list[CheckOutcome], cap: int) -> None:
    eig = doc.to_eigen_problem()
    poly, registry = assemble_eigen_poly(eig)
    if registry.total_qubits > cap:
        raise CapacityError(
            f"verification enumerates 2^{registry.total_qubits} pre-reduction states; "
            f"cap is 2^{cap}"
        )
    # the exhaustive sampler's own 25-qubit cap guards the reduced register
    qubo, _, plan = build_eigen_qubo(eig)

    ok = True
    detail = ""
    for bits in _all_bitstrings(registry.total_qubits):
        decoded = registry.decode(bits)
        res_sq = eigen_residual_sq(doc.A, decoded.eigenvalue, decoded.x)
        if abs(poly_energy(poly, bits) - res_sq) > ENERGY_ATOL:
            ok = False
            detail = f"state {bits}: polynomial != residual^2"
            break
    checks.append(CheckOutcome(name="polynomial-residual-identity", passed=ok, detail=detail))

    poly_min = math.inf
    poly_ground: set[tuple[int, ...]] = set()
    for bits in _all_bitstrings(registry.total_qubits):
        value = poly_energy(poly, bits)
        if value < poly_min - ENERGY_ATOL:
            poly_min = value
            poly_ground = {bits}
        elif abs(value - poly_min) <= ENERGY_ATOL:
            poly_ground.add(bits)

    samples = solve_exhaustive(qubo)
    ground = samples.ground()
    projections = {rec.bits[: registry.total_qubits] for rec in ground.records}
    same_min = abs(ground.records[0].energy - poly_min) <= ENERGY_ATOL
    checks.append(
        CheckOutcome(
            name="reduction-preserves-minimum",
            passed=same_min,
            detail=f"qubo min {ground.records[0].energy}, polynomial min {poly_min}",
        )
    )
    checks.append(
        CheckOutcome(
            name="ground-projection-equality",
            passed=projections == poly_ground,
            detail=f"{len(projections)} projected vs {len(poly_ground)} polynomial ground states",
        )
    )

    ok = True
    detail = ""
    for rec in ground.records:
        for (a, b), w, _ in plan.substitutions:
            if rec.bits[w] != rec.bits[a] * rec.bits[b]:
                ok = False
                detail = f"auxiliary {w} != product of pair ({a}, {b}) at a ground state"
                break
        if not ok:
            break
    checks.append(CheckOutcome(name="penalty-sufficiency", passed=ok, detail=detail))


def verify_document(
    doc: ProblemDocument, qubit_cap: int = VERIFY_QUBIT_CAP
) -> list[CheckOutcome]:
    """Run the exhaustive oracle checks applicable to the instance.

    ``qubit_cap`` bounds the register size enumerated (pre-reduction
    size for eigen documents).
    """
    checks: list[CheckOutcome] = []
    if doc.kind == "linsys":
        _verify_linsys(doc, checks, qubit_cap)
    else:
        _verify_eigen(doc, checks, qubit_cap)
    return checks
