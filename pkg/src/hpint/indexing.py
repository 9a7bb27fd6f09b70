"""Index-tuple algebra for symmetric integral tables.

The integrals computed by this package are fully symmetric in their degree
indices (W, U) so one value is stored per *multiset* of degrees.  A tuple is
canonicalized by sorting it in non-increasing order, is grouped by its level
(the sum of its entries), and is addressed inside the level by its rank in
the lexicographically decreasing enumeration of all canonical tuples with
entries bounded by the table's maximum degree.

Ranks are computed by counting bounded partitions, not by hashing, so level
storage is a flat array addressable in O(arity) per lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ARITY = {"W": 4, "Y": 4, "U": 6}
KINDS = ("W", "Y", "U")


class ArityMismatchError(ValueError):
    pass


class LevelRangeError(ValueError):
    pass


class RankRangeError(ValueError):
    pass


class IndexRangeError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalKey:
    """Non-increasing representative of an index multiset.

    ``rank`` is the key's 0-based position within the enumeration of its
    level for a given maximum degree; it is ``None`` when the key was
    canonicalized without a maximum degree (rank is degree-bound dependent).
    """

    sorted: tuple[int, ...]
    level: int
    rank: int | None = None


@dataclass(frozen=True)
class LevelIndexSet:
    """All canonical keys of one level, in enumeration order."""

    arity: int
    level: int
    max_degree: int
    keys: tuple[CanonicalKey, ...]

    def __len__(self) -> int:
        return len(self.keys)


def validate_tuple(t, arity: int | None = None) -> tuple[int, ...]:
    """Check arity and non-negativity; return the tuple of plain ints."""
    tt = tuple(int(x) for x in t)
    if arity is not None:
        if len(tt) != arity:
            raise ArityMismatchError(f"expected arity {arity}, got {len(tt)}")
    elif len(tt) not in (4, 6):
        raise ArityMismatchError(f"arity must be 4 or 6, got {len(tt)}")
    if any(x < 0 for x in tt):
        raise IndexRangeError(f"indices must be non-negative, got {tt}")
    return tt


def level(t) -> int:
    """Level of a tuple: the sum of its entries."""
    return sum(validate_tuple(t))


@lru_cache(maxsize=None)
def _count_table(arity: int, max_degree: int) -> np.ndarray:
    """cb[p, t, b]: number of non-increasing length-p tuples with entries in
    [0, b] summing to t, for p <= arity, t <= arity*max_degree, b <= max_degree.

    Recurrence on the largest part: cb[p,t,b] = cb[p,t,b-1] + cb[p-1,t-b,b].
    """
    lmax = arity * max_degree
    cb = np.zeros((arity + 1, lmax + 1, max_degree + 1), dtype=np.int64)
    cb[0, 0, :] = 1
    for p in range(1, arity + 1):
        cb[p, 0, 0] = 1
        for b in range(1, max_degree + 1):
            cb[p, :, b] = cb[p, :, b - 1]
            cb[p, b:, b] += cb[p - 1, : lmax + 1 - b, b]
    return cb


@lru_cache(maxsize=None)
def _rank_tail_table(arity: int, max_degree: int) -> np.ndarray:
    """g[q, r, v]: number of non-increasing length-(q+1) tuples with entries
    <= max_degree, first entry >= v, summing to r.

    rank contributions are differences g[q, r, lo] - g[q, r, hi], which count
    tuples whose entry at one position lies in [lo, hi).
    """
    cb = _count_table(arity, max_degree)
    lmax = arity * max_degree
    g = np.zeros((arity, lmax + 1, max_degree + 2), dtype=np.int64)
    for q in range(arity):
        x = np.zeros((lmax + 1, max_degree + 1), dtype=np.int64)
        for w in range(max_degree + 1):
            x[w:, w] = cb[q, : lmax + 1 - w, w]
        g[q, :, : max_degree + 1] = x[:, ::-1].cumsum(axis=1)[:, ::-1]
    return g


def count(arity: int, lvl: int, max_degree: int) -> int:
    """Number of canonical tuples of a level: partitions of ``lvl`` into at
    most ``arity`` parts, each part <= ``max_degree``."""
    if arity not in (4, 6):
        raise ArityMismatchError(f"arity must be 4 or 6, got {arity}")
    if max_degree < 0:
        raise IndexRangeError("max_degree must be >= 0")
    if not 0 <= lvl <= arity * max_degree:
        raise LevelRangeError(
            f"level {lvl} out of range [0, {arity * max_degree}] for "
            f"arity={arity}, max_degree={max_degree}"
        )
    return int(_count_table(arity, max_degree)[arity, lvl, max_degree])


def canonicalize(t, max_degree: int | None = None) -> CanonicalKey:
    """Sort a tuple non-increasing; attach its level and, when a maximum
    degree is supplied, its rank within the level enumeration."""
    tt = validate_tuple(t)
    key = tuple(sorted(tt, reverse=True))
    lvl = sum(key)
    rank = None
    if max_degree is not None:
        rank = rank_of(key, max_degree)
    return CanonicalKey(sorted=key, level=lvl, rank=rank)


def parity_nonzero(kind: str, t) -> bool:
    """Necessary-condition filter: False when selection rules force a zero.

    Odd level always forces zero; Y additionally vanishes when its first two
    or last two indices coincide.  True does not guarantee a non-zero value
    (accidental zeros pass the filter).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    tt = validate_tuple(t, ARITY[kind])
    if sum(tt) % 2:
        return False
    if kind == "Y" and (tt[0] == tt[1] or tt[2] == tt[3]):
        return False
    return True


def rank_of(key: tuple[int, ...], max_degree: int) -> int:
    """Rank of a canonical (non-increasing) tuple within its level.

    Counts the canonical tuples that precede it in lexicographically
    decreasing order.
    """
    arity = len(key)
    if arity not in (4, 6):
        raise ArityMismatchError(f"arity must be 4 or 6, got {arity}")
    if any(key[p] < key[p + 1] for p in range(arity - 1)):
        raise RankRangeError(f"{key} is not canonical (non-increasing)")
    if key[0] > max_degree:
        raise IndexRangeError(f"entry {key[0]} exceeds max_degree {max_degree}")
    if key[-1] < 0:
        raise IndexRangeError(f"indices must be non-negative, got {key}")
    g = _rank_tail_table(arity, max_degree)
    rank = 0
    rem = sum(key)
    bound = max_degree
    for p in range(arity - 1):
        tp = key[p]
        gq = g[arity - p - 1]
        rank += int(gq[rem, tp + 1]) - int(gq[rem, bound + 1])
        bound = tp
        rem -= tp
    return rank


def unrank(arity: int, lvl: int, max_degree: int, rank: int) -> CanonicalKey:
    """Inverse of :func:`rank_of` on the (arity, level, max_degree) key set."""
    n = count(arity, lvl, max_degree)
    if not 0 <= rank < n:
        raise RankRangeError(
            f"rank {rank} out of range [0, {n}) for arity={arity}, "
            f"level={lvl}, max_degree={max_degree}"
        )
    cb = _count_table(arity, max_degree)
    out = []
    rem = lvl
    bound = max_degree
    r = rank
    for p in range(arity):
        parts_left = arity - p - 1
        for v in range(min(bound, rem), -1, -1):
            c = int(cb[parts_left, rem - v, v])
            if r < c:
                out.append(v)
                rem -= v
                bound = v
                break
            r -= c
    return CanonicalKey(sorted=tuple(out), level=lvl, rank=rank)


def level_tuple_array(arity: int, lvl: int, max_degree: int) -> np.ndarray:
    """All canonical tuples of one level as an (n, arity) int64 array, in
    lexicographically decreasing order."""
    n = count(arity, lvl, max_degree)
    cb = _count_table(arity, max_degree)
    out = np.empty((n, arity), dtype=np.int64)
    if n:
        _fill_level(out, arity, lvl, min(max_degree, lvl), cb)
    return out


def _fill_level(out: np.ndarray, parts: int, total: int, bound: int, cb) -> None:
    # caller guarantees the block size matches cb[parts, total, bound]
    if parts == 1:
        out[:, 0] = total
        return
    if parts == 2:
        top = min(bound, total)
        vs = np.arange(top, (total + 1) // 2 - 1, -1)
        out[:, 0] = vs
        out[:, 1] = total - vs
        return
    row = 0
    vmin = (total + parts - 1) // parts
    for v in range(min(bound, total), vmin - 1, -1):
        nblk = int(cb[parts - 1, total - v, v])
        if nblk == 0:
            continue
        blk = out[row : row + nblk]
        blk[:, 0] = v
        _fill_level(blk[:, 1:], parts - 1, total - v, v, cb)
        row += nblk


def rank_rows(rows: np.ndarray, lvl: int, max_degree: int) -> np.ndarray:
    """Vectorized :func:`rank_of` over an (n, arity) array of canonical rows,
    all at the same level."""
    n, arity = rows.shape
    g = _rank_tail_table(arity, max_degree)
    rank = np.zeros(n, dtype=np.int64)
    rem = np.full(n, lvl, dtype=np.int64)
    bound = np.full(n, max_degree, dtype=np.int64)
    for p in range(arity - 1):
        gq = g[arity - p - 1]
        tp = rows[:, p]
        rank += gq[rem, tp + 1] - gq[rem, bound + 1]
        bound = tp
        rem = rem - tp
    return rank


def enumerate_level(arity: int, lvl: int, max_degree: int) -> LevelIndexSet:
    """Complete, deterministic enumeration of one level's canonical keys."""
    arr = level_tuple_array(arity, lvl, max_degree)
    keys = tuple(
        CanonicalKey(sorted=tuple(int(x) for x in row), level=lvl, rank=r)
        for r, row in enumerate(arr)
    )
    return LevelIndexSet(arity=arity, level=lvl, max_degree=max_degree, keys=keys)
