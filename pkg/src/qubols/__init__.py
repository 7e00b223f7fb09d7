"""qubols: compile linear systems and eigenpair problems to QUBO form,
solve them with classical samplers, and export annealer-ready artifacts."""

__version__ = "0.1.0"

from .encoding import (
    DecodedSolution,
    EncodingConfig,
    QubitRole,
    VariableRegistry,
    decode,
    flat_index,
    representable_range,
)
from .eigen import (
    EigenProblem,
    ReductionPlan,
    assemble_eigen_poly,
    build_eigen_qubo,
    filter_nontrivial,
    quadratize,
)
from .errors import (
    CapacityError,
    ConfigurationError,
    DimensionError,
    QubolsError,
    UnsupportedDegreeError,
)
from .exports import export_coordinate, export_vendor_script, parse_coordinate
from .linsys import (
    CrossTermPolicy,
    LinearSystemProblem,
    apply_scaling,
    build_model1,
    build_model1_parallel,
    build_model2,
    estimate_cost,
)
from .model import (
    IsingProblem,
    PseudoBooleanPolynomial,
    QuboProblem,
    SampleRecord,
    SampleSet,
    ising_energy,
    ising_to_qubo,
    poly_energy,
    qubo_energy,
    qubo_to_ising,
)
from .samplers import AnnealSchedule, ground_states, solve_exhaustive, solve_sa
from .schemas import ProblemDocument, load_problem

__all__ = [
    "AnnealSchedule",
    "CapacityError",
    "ConfigurationError",
    "CrossTermPolicy",
    "DecodedSolution",
    "DimensionError",
    "EigenProblem",
    "EncodingConfig",
    "IsingProblem",
    "LinearSystemProblem",
    "ProblemDocument",
    "PseudoBooleanPolynomial",
    "QubitRole",
    "QuboProblem",
    "QubolsError",
    "ReductionPlan",
    "SampleRecord",
    "SampleSet",
    "UnsupportedDegreeError",
    "VariableRegistry",
    "apply_scaling",
    "assemble_eigen_poly",
    "build_eigen_qubo",
    "build_model1",
    "build_model1_parallel",
    "build_model2",
    "decode",
    "estimate_cost",
    "export_coordinate",
    "export_vendor_script",
    "filter_nontrivial",
    "flat_index",
    "ground_states",
    "ising_energy",
    "ising_to_qubo",
    "load_problem",
    "parse_coordinate",
    "poly_energy",
    "quadratize",
    "qubo_energy",
    "qubo_to_ising",
    "representable_range",
    "solve_exhaustive",
    "solve_sa",
]
