"""Command-line interface; a thin client over the service API.

Exit codes: 0 success, 1 computational or assertion failure, 2 usage
errors (argparse's convention).
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Optional

import httpx

from .client import ServiceClient, ServiceError
from .schemas import (
    BuildRequest,
    DecodeRequest,
    SolveRequest,
    SolveResponse,
    load_problem,
)


def _fmt(value: float) -> str:
    return f"{value:g}"


def _vector(values) -> str:
    return "(" + ", ".join(_fmt(v) for v in values) + ")"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubols",
        description="Compile linear systems and eigenpair problems to QUBO, "
        "solve them classically, and export annealer-ready artifacts.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running qubols service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="compile a problem file and export the QUBO")
    p_build.add_argument("problem")
    p_build.add_argument("--out", default=None, help="write here instead of stdout")
    p_build.add_argument("--format", choices=("coord", "vendor"), default="coord")
    p_build.add_argument("--include-zeros", action="store_true")
    p_build.add_argument("--num-reads", type=int, default=1000,
                         help="reads requested in the emitted vendor script")

    p_solve = sub.add_parser("solve", help="compile, sample, and report low-energy states")
    p_solve.add_argument("problem")
    p_solve.add_argument("--sampler", choices=("exhaustive", "sa"), default="exhaustive")
    p_solve.add_argument("--reads", type=int, default=1000)
    p_solve.add_argument("--sweeps", type=int, default=1000)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--margin", type=float, default=0.0,
                         help="report states within this energy of the minimum")
    p_solve.add_argument("--beta-start", type=float, default=0.1)
    p_solve.add_argument("--beta-end", type=float, default=10.0)

    p_decode = sub.add_parser("decode", help="decode a register bitstring")
    p_decode.add_argument("problem")
    p_decode.add_argument("bits")

    p_est = sub.add_parser("estimate", help="print the assembly cost triple")
    p_est.add_argument("n", type=int)
    p_est.add_argument("m", type=int)

    p_verify = sub.add_parser("verify", help="run the exhaustive oracle checks")
    p_verify.add_argument("problem")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _render_solve(response: SolveResponse, margin: float) -> str:
    if response.sampler == "exhaustive":
        source = f"low-energy states (exhaustive over {response.total_reads} states)"
    else:
        source = f"sampled states ({response.total_reads} reads)"
    lines = [
        f"register: {response.num_vars} qubits    "
        f"constant offset: {_fmt(response.offset)} (row energies exclude it)",
        f"{source}:",
    ]
    header = " ".join(f"q{i + 1}" for i in range(response.num_vars))
    lines.append(f"{header}  energy  occurrences")
    for rec in response.records:
        bits = "  ".join(rec.bits)
        lines.append(f"{bits}  {_fmt(rec.energy - response.offset)}  {rec.occurrences}")
    lines.append(f"decoded solutions within {_fmt(margin)} of the minimum:")
    for sol in response.solutions:
        parts = [f"x = {_vector(sol.x)}"]
        if sol.eigenvalue is not None:
            parts.append(f"lambda = {_fmt(sol.eigenvalue)}")
        parts.append(f"residual = {_fmt(sol.residual)}")
        parts.append(f"[occurrences {sol.occurrences}]")
        lines.append("  " + "   ".join(parts))
    if response.nontrivial_solutions is not None:
        lines.append("nontrivial eigenpairs:")
        if not response.nontrivial_solutions:
            lines.append("  (none)")
        seen = set()
        for sol in response.nontrivial_solutions:
            key = (sol.eigenvalue, tuple(sol.x))
            if key in seen:
                continue
            seen.add(key)
            lines.append(
                f"  lambda = {_fmt(sol.eigenvalue)}   x = {_vector(sol.x)}   "
                f"residual = {_fmt(sol.residual)}"
            )
    return "\n".join(lines)


async def _dispatch(args: argparse.Namespace) -> int:
    client = ServiceClient(server=args.server)

    if args.command == "build":
        doc = load_problem(args.problem)
        response = await client.build(
            BuildRequest(
                problem=doc,
                format=args.format,
                include_zeros=args.include_zeros,
                num_reads=args.num_reads,
            )
        )
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(response.text)
            print(f"wrote {response.format} export ({response.num_vars} variables) to {args.out}")
        else:
            sys.stdout.write(response.text)
        return 0

    if args.command == "solve":
        doc = load_problem(args.problem)
        response = await client.solve(
            SolveRequest(
                problem=doc,
                sampler=args.sampler,
                reads=args.reads,
                sweeps=args.sweeps,
                seed=args.seed,
                beta_start=args.beta_start,
                beta_end=args.beta_end,
                margin=args.margin,
            )
        )
        print(_render_solve(response, args.margin))
        return 0

    if args.command == "decode":
        doc = load_problem(args.problem)
        response = await client.decode(DecodeRequest(problem=doc, bits=args.bits))
        print(f"x = {_vector(response.x)}")
        if response.eigenvalue is not None:
            print(f"lambda = {_fmt(response.eigenvalue)}")
        print(f"residual = {_fmt(response.residual)}")
        return 0

    if args.command == "estimate":
        response = await client.estimate(args.n, args.m)
        print(f"{response.pair_count} {response.per_pair_total} {response.grand_total}")
        return 0

    if args.command == "verify":
        doc = load_problem(args.problem)
        response = await client.verify(doc)
        for check in response.checks:
            status = "ok" if check.passed else "FAILED"
            suffix = f" ({check.detail})" if check.detail else ""
            print(f"{status:>6}  {check.name}{suffix}")
        if not response.passed:
            print("verification failed", file=sys.stderr)
            return 1
        print("all checks passed")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        # uvicorn owns the event loop; everything else runs as a client
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        return asyncio.run(_dispatch(args))
    except ServiceError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error: cannot reach the service: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
