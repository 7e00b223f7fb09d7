"""Text export formats for compiled QUBO problems.

Two formats are emitted:

- Coordinate: a header ``N <num_vars> OFFSET <offset>`` followed by one
  ``<i> <j> <coefficient>`` line per upper-triangular pair (0-based,
  sorted). Coefficients use shortest round-trip decimal formatting so a
  re-parse reproduces the problem exactly.

- Vendor script: a ready-to-run annealer submission script that declares
  a ``linear`` map keyed ``('q<i>','q<i>')`` (1-based, every diagonal
  entry materialized) and a ``quadratic`` map for off-diagonal pairs,
  merges them, and samples with a configurable number of reads.

For both formats ``include_zero_entries`` switches between emitting only
stored (nonzero) off-diagonal coefficients and materializing every pair.
"""

from __future__ import annotations

from .errors import DimensionError
from .model import QuboProblem


def export_coordinate(q: QuboProblem, include_zero_entries: bool = False) -> str:
    """Serialize to the coordinate text format."""
    lines = [f"N {q.num_vars} OFFSET {q.offset!r}"]
    if include_zero_entries:
        pairs = [(i, j) for i in range(q.num_vars) for j in range(i, q.num_vars)]
    else:
        pairs = sorted(q.coefficients)
    for i, j in pairs:
        lines.append(f"{i} {j} {q.coefficient(i, j)!r}")
    return "\n".join(lines) + "\n"


def parse_coordinate(text: str) -> QuboProblem:
    """Parse the coordinate format back into a problem; exact round trip."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty coordinate document")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "N" or header[2] != "OFFSET":
        raise ValueError(f"line 1: expected 'N <num_vars> OFFSET <offset>', got {lines[0]!r}")
    try:
        num_vars = int(header[1])
        offset = float(header[3])
    except ValueError as exc:
        raise ValueError(f"line 1: {exc}") from exc
    coeffs: dict[tuple[int, int], float] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected '<i> <j> <coefficient>', got {line!r}")
        try:
            i, j, value = int(fields[0]), int(fields[1]), float(fields[2])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if not (0 <= i <= j < num_vars):
            raise DimensionError(f"line {lineno}: pair ({i}, {j}) out of range")
        coeffs[(i, j)] = coeffs.get((i, j), 0.0) + value
    return QuboProblem(num_vars=num_vars, coefficients=coeffs, offset=offset)


def export_vendor_script(
    q: QuboProblem,
    include_zero_entries: bool = False,
    num_reads: int = 1000,
) -> str:
    """Emit an annealer submission script for the problem.

    Diagonal entries are always materialized (the linear map is built by
    an unconditional loop over variables); the zero-entry toggle governs
    off-diagonal pairs only. Key indices are 1-based flat qubit indices.
    """
    if num_reads < 1:
        raise ValueError(f"num_reads must be >= 1, got {num_reads}")
    n = q.num_vars
    linear = ", ".join(
        f"('q{i + 1}','q{i + 1}'): {q.coefficient(i, i)!r}" for i in range(n)
    )
    quad_items = []
    for i in range(n):
        for j in range(i + 1, n):
            value = q.coefficient(i, j)
            if value != 0.0 or include_zero_entries:
                quad_items.append(f"('q{i + 1}','q{j + 1}'): {value!r}")
    quadratic = ", ".join(quad_items)
    return (
        "from dwave.system import DWaveSampler, EmbeddingComposite\n"
        "sampler_auto = EmbeddingComposite(DWaveSampler(solver={'qpu': True}))\n"
        "\n"
        f"linear = {{{linear}}}\n"
        "\n"
        f"quadratic = {{{quadratic}}}\n"
        "\n"
        "Q = dict(linear)\n"
        "Q.update(quadratic)\n"
        "\n"
        f"sampleset = sampler_auto.sample_qubo(Q, num_reads={num_reads})\n"
        "print(sampleset)\n"
    )
