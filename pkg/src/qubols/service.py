"""FastAPI service exposing the compiler, samplers, and verifier.

The service is stateless: every request carries the full problem
document, mirroring how hosted annealer APIs accept problems. The CLI is
a thin client of these endpoints (in-process by default, remote with
``--server``).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from . import __version__
from .eigen import filter_nontrivial
from .errors import QubolsError
from .linsys import estimate_cost
from .pipeline import (
    compile_document,
    decode_with_residual,
    export_text,
    parse_bitstring,
    solve_document,
    verify_document,
)
from .schemas import (
    BuildRequest,
    BuildResponse,
    DecodeRequest,
    DecodeResponse,
    EstimateResponse,
    ProblemDocument,
    SampleRow,
    SolutionRow,
    SolveRequest,
    SolveResponse,
    VerifyResponse,
)


def _bits_str(bits) -> str:
    return "".join(str(b) for b in bits)


def create_app() -> FastAPI:
    app = FastAPI(title="qubols", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/build", response_model=BuildResponse)
    def build(req: BuildRequest) -> BuildResponse:
        compiled = _run(compile_document, req.problem)
        text = export_text(compiled, req.format, req.include_zeros, req.num_reads)
        return BuildResponse(
            num_vars=compiled.qubo.num_vars,
            offset=compiled.qubo.offset,
            format=req.format,
            text=text,
        )

    @app.post("/solve", response_model=SolveResponse)
    def solve(req: SolveRequest) -> SolveResponse:
        outcome = _run(
            solve_document,
            req.problem,
            sampler=req.sampler,
            reads=req.reads,
            sweeps=req.sweeps,
            seed=req.seed,
            beta_start=req.beta_start,
            beta_end=req.beta_end,
            margin=req.margin,
        )
        # full deduplicated table (for sa its occurrences sum to the reads);
        # decoded solutions cover the margin window only
        records = [
            SampleRow(bits=_bits_str(rec.bits), energy=rec.energy, occurrences=rec.occurrences)
            for rec in outcome.samples.records
        ]
        solutions = [
            SolutionRow(
                bits=_bits_str(rec.bits),
                x=list(sol.x),
                eigenvalue=sol.eigenvalue,
                residual=sol.residual,
                occurrences=rec.occurrences,
            )
            for rec, sol in zip(outcome.window.records, outcome.solutions)
        ]
        nontrivial = None
        if req.problem.kind == "eigen":
            keep = {id(sol) for sol in filter_nontrivial(outcome.solutions)}
            nontrivial = [row for sol, row in zip(outcome.solutions, solutions) if id(sol) in keep]
        return SolveResponse(
            num_vars=outcome.compiled.qubo.num_vars,
            offset=outcome.compiled.qubo.offset,
            min_energy=outcome.window.records[0].energy if outcome.window.records else 0.0,
            sampler=req.sampler,
            total_reads=outcome.total_reads,
            records=records,
            solutions=solutions,
            nontrivial_solutions=nontrivial,
        )

    @app.post("/decode", response_model=DecodeResponse)
    def decode(req: DecodeRequest) -> DecodeResponse:
        compiled = _run(compile_document, req.problem)
        bits = _run(parse_bitstring, req.bits, compiled.registry)
        sol = decode_with_residual(compiled, bits)
        return DecodeResponse(
            num_vars=compiled.qubo.num_vars,
            x=list(sol.x),
            eigenvalue=sol.eigenvalue,
            residual=sol.residual,
        )

    @app.get("/estimate", response_model=EstimateResponse)
    def estimate(n: int = Query(ge=1), m: int = Query(ge=0)) -> EstimateResponse:
        pairs, per_pair, grand = estimate_cost(n, m)
        return EstimateResponse(pair_count=pairs, per_pair_total=per_pair, grand_total=grand)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(problem: ProblemDocument) -> VerifyResponse:
        checks = _run(verify_document, problem)
        return VerifyResponse(passed=all(c.passed for c in checks), checks=checks)

    return app


def _run(fn, *args, **kwargs):
    """Translate domain errors into HTTP 400 responses."""
    try:
        return fn(*args, **kwargs)
    except (QubolsError, ValueError, IndexError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
