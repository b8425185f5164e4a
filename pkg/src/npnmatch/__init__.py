"""NPN Boolean matching: signature-guided search with a brute-force oracle."""

from .boolfn import (
    Cube,
    Literal,
    MAX_VARS,
    NPTransformation,
    TruthTable,
    apply_np_transform,
    cofactor,
    compose,
    count_minterms,
    cube_of,
    equal,
    negate,
)
from .matcher import (
    BudgetExceededError,
    MatchResult,
    Observer,
    VarMapping,
    Verdict,
    enumerate_complete_transformations,
    match_npn,
)
from .oracle import (
    enumerate_npn_classes,
    exhaustive_match,
    random_equivalent_pair,
    random_function,
)
from .signature import SSValue, SSVector, compute_ss_vector
from .symmetry import SymmetryClass, SymmetryKind, are_symmetric, build_symmetry_classes
from .workbench import (
    BenchConfig,
    BenchReport,
    ParseError,
    cli_dispatch,
    parse_function,
    run_benchmark,
    serialize_function,
)

__version__ = "1.0.0"

__all__ = [
    "BenchConfig",
    "BenchReport",
    "BudgetExceededError",
    "Cube",
    "Literal",
    "MAX_VARS",
    "MatchResult",
    "NPTransformation",
    "Observer",
    "ParseError",
    "SSValue",
    "SSVector",
    "SymmetryClass",
    "SymmetryKind",
    "TruthTable",
    "VarMapping",
    "Verdict",
    "apply_np_transform",
    "are_symmetric",
    "build_symmetry_classes",
    "cli_dispatch",
    "cofactor",
    "compose",
    "compute_ss_vector",
    "count_minterms",
    "cube_of",
    "enumerate_complete_transformations",
    "enumerate_npn_classes",
    "equal",
    "exhaustive_match",
    "match_npn",
    "negate",
    "parse_function",
    "random_equivalent_pair",
    "random_function",
    "run_benchmark",
    "serialize_function",
]
