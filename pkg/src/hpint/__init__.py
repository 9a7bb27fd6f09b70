"""hpint: recursive tables of Gaussian-weighted Hermite product integrals.

Builds, stores and serves every non-zero integral of products of four (W)
and six (U) Hermite polynomials up to a chosen maximum degree, plus the
derivative-bracket variant (Y) evaluated from W.  An exact rational oracle
and a Gauss-Hermite quadrature oracle provide independent verification, and
a small configuration-interaction demo consumes the W table.
"""

from .indexing import (
    ARITY,
    ArityMismatchError,
    CanonicalKey,
    IndexRangeError,
    KINDS,
    LevelIndexSet,
    LevelRangeError,
    RankRangeError,
    canonicalize,
    count,
    enumerate_level,
    level,
    level_tuple_array,
    parity_nonzero,
    rank_of,
    unrank,
)
from .tables import (
    DEFAULT_MEMORY_CAP,
    GENERATOR_VERSION,
    IntegralTable,
    MemoryCapError,
    QueryResult,
    U_BASE,
    W_BASE,
    build_u_table,
    build_w_table,
    estimate_table_bytes,
    resolve_threads,
    u_value,
    w_value,
    y_canonical,
    y_value,
)
from .oracle import (
    ExactValue,
    InsufficientNodesError,
    exact_u,
    exact_w,
    exact_y,
    gaussian_weighted_integral,
    hermite_poly,
    poly_mul,
    quadrature_value,
)
from .tableio import (
    FORMAT_VERSION,
    TableFormatError,
    read_binary,
    write_binary,
    write_csv,
    write_json_meta,
    write_y_binary,
    write_y_csv,
    write_y_json_meta,
    y_canonical_tuples,
)
from .cidemo import (
    Hamiltonian,
    PairBasis,
    build_hamiltonian,
    ground_state_energy,
)

__version__ = "0.1.0"

__all__ = [
    "ARITY",
    "ArityMismatchError",
    "CanonicalKey",
    "DEFAULT_MEMORY_CAP",
    "ExactValue",
    "FORMAT_VERSION",
    "GENERATOR_VERSION",
    "Hamiltonian",
    "IndexRangeError",
    "InsufficientNodesError",
    "IntegralTable",
    "KINDS",
    "LevelIndexSet",
    "LevelRangeError",
    "MemoryCapError",
    "PairBasis",
    "QueryResult",
    "RankRangeError",
    "TableFormatError",
    "U_BASE",
    "W_BASE",
    "build_hamiltonian",
    "build_u_table",
    "build_w_table",
    "canonicalize",
    "count",
    "enumerate_level",
    "estimate_table_bytes",
    "exact_u",
    "exact_w",
    "exact_y",
    "gaussian_weighted_integral",
    "ground_state_energy",
    "hermite_poly",
    "level",
    "level_tuple_array",
    "parity_nonzero",
    "poly_mul",
    "quadrature_value",
    "rank_of",
    "read_binary",
    "resolve_threads",
    "u_value",
    "unrank",
    "w_value",
    "write_binary",
    "write_csv",
    "write_json_meta",
    "write_y_binary",
    "write_y_csv",
    "write_y_json_meta",
    "y_canonical",
    "y_canonical_tuples",
    "y_value",
]
