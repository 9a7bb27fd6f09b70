"""Level-synchronous construction of the integral tables.

The normalized Gaussian-weighted Hermite product integrals

    W[i,j,k,l]     ~ integral of exp(-2x^2) H_i H_j H_k H_l,   (4 factors)
    U[i,j,k,l,m,n] ~ integral of exp(-3x^2) H_i ... H_n,        (6 factors)

satisfy recurrences that connect one level (the index sum) to the level two
below it.  With the pivot i chosen as the largest index of a canonical tuple,

    W[i,j,k,l] = 1/2 * ( -sqrt((i-1)/i) * W[i-2,j,k,l]
                         + sqrt(j/i) * W[i-1,j-1,k,l]
                         + sqrt(k/i) * W[i-1,j,k-1,l]
                         + sqrt(l/i) * W[i-1,j,k,l-1] )

and U is analogous with prefactor 1/3, leading coefficient -2*sqrt((i-1)/i)
and five positive terms that lower the pivot and one other index.  Terms
whose coefficient index is zero are skipped, so no negative index is ever
formed.  The base values are W[0,0,0,0] = 1/sqrt(2*pi) and
U[0,...,0] = 1/(sqrt(3)*pi); odd levels vanish identically and are never
stored.

The p-wave variant Y is evaluated on demand from a W table:

    Y[i,j,k,l] = 2 * ( sqrt(i*k) * W[i-1,j,k-1,l] - sqrt(i*l) * W[i-1,j,k,l-1]
                       - sqrt(j*k) * W[i,j-1,k-1,l] + sqrt(j*l) * W[i,j-1,k,l-1] )

which vanishes for odd level and when i == j or k == l.

No factorial is ever evaluated here; coefficients are square roots of index
ratios, which is what keeps the construction stable at large degree.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .indexing import (
    ARITY,
    IndexRangeError,
    count,
    level_tuple_array,
    rank_of,
    rank_rows,
    validate_tuple,
)

GENERATOR_VERSION = "hpint-0.1.0"

W_BASE = 1.0 / math.sqrt(2.0 * math.pi)
U_BASE = 1.0 / (math.sqrt(3.0) * math.pi)

# refuse table builds whose value storage alone would exceed this
DEFAULT_MEMORY_CAP = 1 << 30

# rows below this threshold are not worth farming out to worker threads
_PARALLEL_MIN_ROWS = 1 << 16


class MemoryCapError(MemoryError):
    pass


@dataclass(frozen=True)
class QueryResult:
    """Lookup result with a diagnostic for structurally forced zeros."""

    value: float
    zero_reason: str | None = None  # "odd-parity" | "y-selection-rule"


@dataclass(eq=False)
class IntegralTable:
    """All non-zero canonical values of one integral family up to a maximum
    degree, stored per even level as flat arrays in rank order."""

    kind: str  # "W" or "U"
    max_degree: int
    levels: list[np.ndarray]  # levels[s] holds level 2*s, rank-ordered
    generator_version: str = field(default=GENERATOR_VERSION)

    @property
    def arity(self) -> int:
        return ARITY[self.kind]

    @property
    def record_count(self) -> int:
        return sum(len(v) for v in self.levels)

    @property
    def value_bytes(self) -> int:
        return sum(v.nbytes for v in self.levels)

    def level_values(self, lvl: int) -> np.ndarray:
        if lvl % 2 or not 0 <= lvl <= self.arity * self.max_degree:
            raise ValueError(f"no stored level {lvl}")
        return self.levels[lvl // 2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegralTable):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.max_degree == other.max_degree
            and len(self.levels) == len(other.levels)
            and all(
                a.tobytes() == b.tobytes()  # bit-exact, NaN/zero-sign safe
                for a, b in zip(self.levels, other.levels)
            )
        )


def estimate_table_bytes(kind: str, max_degree: int) -> int:
    """Bytes of value storage a build would allocate: one float64 per
    canonical tuple on every even level."""
    if kind not in ("W", "U"):
        raise ValueError(f"tables exist for kinds 'W' and 'U', got {kind!r}")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    arity = ARITY[kind]
    return 8 * sum(
        count(arity, lvl, max_degree)
        for lvl in range(0, arity * max_degree + 1, 2)
    )


def resolve_threads(threads: int | None = None) -> int:
    """Worker cap for builds: explicit argument, else HPINT_THREADS, else the
    available hardware parallelism."""
    if threads is None:
        env = os.environ.get("HPINT_THREADS")
        if env is not None:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(
                    f"HPINT_THREADS must be a positive integer, got {env!r}"
                ) from None
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"thread cap must be a positive integer, got {threads}")
    return threads


def build_w_table(
    max_degree: int,
    *,
    memory_cap_bytes: int | None = DEFAULT_MEMORY_CAP,
    threads: int | None = None,
) -> IntegralTable:
    """Build the four-index table for all even levels 0..4*max_degree."""
    return _build("W", max_degree, memory_cap_bytes, threads)


def build_u_table(
    max_degree: int,
    *,
    memory_cap_bytes: int | None = DEFAULT_MEMORY_CAP,
    threads: int | None = None,
) -> IntegralTable:
    """Build the six-index table for all even levels 0..6*max_degree."""
    return _build("U", max_degree, memory_cap_bytes, threads)


def _build(kind, max_degree, memory_cap_bytes, threads):
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    threads = resolve_threads(threads)
    need = estimate_table_bytes(kind, max_degree)
    if memory_cap_bytes is not None and need > memory_cap_bytes:
        raise MemoryCapError(
            f"kind={kind} max_degree={max_degree} needs {need} bytes of value "
            f"storage, above the cap of {memory_cap_bytes}"
        )
    arity = ARITY[kind]
    base = W_BASE if kind == "W" else U_BASE
    levels = [np.array([base], dtype=np.float64)]
    for lvl in range(2, arity * max_degree + 1, 2):
        tuples = level_tuple_array(arity, lvl, max_degree)
        levels.append(
            _level_values(kind, tuples, lvl, levels[-1], max_degree, threads)
        )
    return IntegralTable(kind=kind, max_degree=max_degree, levels=levels)


def _level_values(kind, tuples, lvl, prev, max_degree, threads):
    n = len(tuples)
    if threads > 1 and n >= _PARALLEL_MIN_ROWS:
        # entries of a level are independent given the previous level, so
        # disjoint row blocks can be computed concurrently; per-row results
        # are identical to the serial path, so files do not depend on the
        # thread count
        bounds = np.linspace(0, n, threads + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda se: _rows_values(
                        kind, tuples[se[0] : se[1]], lvl, prev, max_degree
                    ),
                    zip(bounds[:-1], bounds[1:]),
                )
            )
        return np.concatenate(parts)
    return _rows_values(kind, tuples, lvl, prev, max_degree)


def _rows_values(kind, tuples, lvl, prev, max_degree):
    """Evaluate one level's canonical entries from the level two below.

    Term accumulation order is fixed (pivot-lowering term first, then the
    paired terms left to right) so that exactly cancelling entries cancel in
    IEEE arithmetic as well.
    """
    n, arity = tuples.shape
    lead = 1.0 if kind == "W" else 2.0
    acc = np.zeros(n, dtype=np.float64)

    pivot = tuples[:, 0]
    mask = pivot >= 2
    if mask.any():
        dep = tuples[mask].copy()
        dep[:, 0] -= 2
        dep.sort(axis=1)
        iv = pivot[mask].astype(np.float64)
        coeff = -lead * np.sqrt((iv - 1.0) / iv)
        ranks = rank_rows(dep[:, ::-1], lvl - 2, max_degree)
        acc[mask] += coeff * prev[ranks]

    for q in range(1, arity):
        mask = tuples[:, q] >= 1
        if not mask.any():
            continue
        dep = tuples[mask].copy()
        dep[:, 0] -= 1
        dep[:, q] -= 1
        dep.sort(axis=1)
        coeff = np.sqrt(tuples[mask, q] / pivot[mask])
        ranks = rank_rows(dep[:, ::-1], lvl - 2, max_degree)
        acc[mask] += coeff * prev[ranks]

    if kind == "W":
        return 0.5 * acc
    return acc / 3.0


def _checked_lookup(table: IntegralTable, kind: str, t) -> QueryResult:
    if table.kind != kind:
        raise ValueError(f"need a kind={kind} table, got kind={table.kind}")
    tt = validate_tuple(t, ARITY[kind])
    if max(tt) > table.max_degree:
        raise IndexRangeError(
            f"index {max(tt)} exceeds table max_degree {table.max_degree}"
        )
    lvl = sum(tt)
    if lvl % 2:
        return QueryResult(0.0, "odd-parity")
    key = tuple(sorted(tt, reverse=True))
    r = rank_of(key, table.max_degree)
    return QueryResult(float(table.levels[lvl // 2][r]))


def w_value(table: IntegralTable, t) -> QueryResult:
    """Permutation-invariant lookup in a four-index table."""
    return _checked_lookup(table, "W", t)


def u_value(table: IntegralTable, t) -> QueryResult:
    """Permutation-invariant lookup in a six-index table."""
    return _checked_lookup(table, "U", t)


def y_canonical(i: int, j: int, k: int, l: int) -> tuple[int, tuple[int, int, int, int]]:
    """Signed representative of a Y index tuple under its symmetry group.

    Swapping within either pair flips the sign; swapping the pairs does not.
    The representative has i > j, k > l and (i, j) >= (k, l) lexicographically,
    which makes the sign relations hold exactly in floating point: every
    member of an orbit is evaluated through the same representative.
    """
    sign = 1
    if i < j:
        i, j = j, i
        sign = -sign
    if k < l:
        k, l = l, k
        sign = -sign
    if (i, j) < (k, l):
        i, j, k, l = k, l, i, j
    return sign, (i, j, k, l)


def _y_kernel(table: IntegralTable, i, j, k, l) -> float:
    def wv(a, b, c, d):
        key = tuple(sorted((a, b, c, d), reverse=True))
        return float(table.levels[(a + b + c + d) // 2][rank_of(key, table.max_degree)])

    t1 = math.sqrt(i * k) * wv(i - 1, j, k - 1, l) if i and k else 0.0
    t2 = math.sqrt(i * l) * wv(i - 1, j, k, l - 1) if i and l else 0.0
    t3 = math.sqrt(j * k) * wv(i, j - 1, k - 1, l) if j and k else 0.0
    t4 = math.sqrt(j * l) * wv(i, j - 1, k, l - 1) if j and l else 0.0
    return 2.0 * (t1 - t2 - t3 + t4)


def y_value(w_table: IntegralTable, t) -> QueryResult:
    """Evaluate the p-wave integral from a W table; no Y table is stored."""
    if w_table.kind != "W":
        raise ValueError(f"Y is evaluated from a kind=W table, got {w_table.kind}")
    i, j, k, l = validate_tuple(t, 4)
    if max(i, j, k, l) > w_table.max_degree:
        raise IndexRangeError(
            f"index {max(i, j, k, l)} exceeds table max_degree {w_table.max_degree}"
        )
    if i == j or k == l:
        # the derivative bracket vanishes identically as a polynomial
        return QueryResult(0.0, "y-selection-rule")
    if (i + j + k + l) % 2:
        return QueryResult(0.0, "odd-parity")
    sign, (a, b, c, d) = y_canonical(i, j, k, l)
    return QueryResult(sign * _y_kernel(w_table, a, b, c, d))
