"""Bit-exact binary serialization and human-readable export of tables.

Binary layout (all fields little-endian):

    header   magic "HPIT" | u16 format_version=1 | u8 kind (0=W, 1=Y, 2=U)
             | u8 arity | u16 max_degree | 2 reserved zero bytes
             | u64 record_count
    records  arity x u16 canonical indices (non-increasing) + f8 value,
             ordered by (level ascending, rank ascending)

Y files (kind=1) are derived exports generated from a W table; they are
never read back as build inputs.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .indexing import count, level_tuple_array, rank_rows
from .tables import IntegralTable, y_value

MAGIC = b"HPIT"
FORMAT_VERSION = 1
KIND_CODES = {"W": 0, "Y": 1, "U": 2}
_CODE_KINDS = {v: k for k, v in KIND_CODES.items()}

_HEADER = struct.Struct("<4sHBBH2sQ")


class TableFormatError(ValueError):
    pass


def _record_dtype(arity: int) -> np.dtype:
    return np.dtype([("idx", "<u2", (arity,)), ("val", "<f8")])


def _write_header(sink, kind: str, arity: int, max_degree: int, records: int) -> int:
    sink.write(
        _HEADER.pack(
            MAGIC, FORMAT_VERSION, KIND_CODES[kind], arity, max_degree, b"\0\0", records
        )
    )
    return _HEADER.size


def write_binary(table: IntegralTable, sink) -> int:
    """Serialize a W or U table; returns the number of bytes written."""
    arity = table.arity
    total = _write_header(sink, table.kind, arity, table.max_degree, table.record_count)
    rec = _record_dtype(arity)
    for s, values in enumerate(table.levels):
        block = np.empty(len(values), dtype=rec)
        block["idx"] = level_tuple_array(arity, 2 * s, table.max_degree)
        block["val"] = values
        payload = block.tobytes()
        sink.write(payload)
        total += len(payload)
    return total


def read_binary(source) -> IntegralTable:
    """Parse and validate an HPIT stream back into a table."""
    head = source.read(_HEADER.size)
    if len(head) < _HEADER.size:
        raise TableFormatError("truncated stream: incomplete header")
    magic, version, kind_code, arity, max_degree, _reserved, records = _HEADER.unpack(head)
    if magic != MAGIC:
        raise TableFormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise TableFormatError(f"unsupported format version {version}")
    if kind_code not in _CODE_KINDS:
        raise TableFormatError(f"unknown kind code {kind_code}")
    kind = _CODE_KINDS[kind_code]
    if kind == "Y":
        raise TableFormatError("Y files are derived exports, not loadable tables")
    if arity != (4 if kind == "W" else 6):
        raise TableFormatError(f"kind {kind} with arity {arity}")

    rec = _record_dtype(arity)
    payload = source.read()
    if len(payload) != records * rec.itemsize:
        raise TableFormatError(
            f"truncated stream: expected {records} records "
            f"({records * rec.itemsize} bytes), got {len(payload)} bytes"
        )
    data = np.frombuffer(payload, dtype=rec)

    levels = []
    pos = 0
    for lvl in range(0, arity * max_degree + 1, 2):
        n = count(arity, lvl, max_degree)
        block = data[pos : pos + n]
        if len(block) != n:
            raise TableFormatError(f"truncated stream: level {lvl} incomplete")
        idx = block["idx"].astype(np.int64)
        if (np.diff(idx, axis=1) > 0).any():
            raise TableFormatError(f"non-canonical record at level {lvl}")
        if idx.size and (idx.sum(axis=1) != lvl).any():
            raise TableFormatError(f"out-of-order record: level {lvl} block sums differ")
        if (idx > max_degree).any():
            raise TableFormatError(f"record index exceeds max_degree {max_degree}")
        if n and not np.array_equal(rank_rows(idx, lvl, max_degree), np.arange(n)):
            raise TableFormatError(f"out-of-order record at level {lvl}")
        levels.append(block["val"].astype(np.float64))
        pos += n
    if pos != records:
        raise TableFormatError(
            f"record count {records} does not match enumeration total {pos}"
        )
    return IntegralTable(kind=kind, max_degree=max_degree, levels=levels)


def _csv_header(arity: int) -> str:
    return ("i,j,k,l,value" if arity == 4 else "i,j,k,l,m,n,value") + "\n"


def write_csv(table: IntegralTable, sink) -> None:
    """One row per canonical entry, shortest round-trip decimals."""
    arity = table.arity
    sink.write(_csv_header(arity))
    for s, values in enumerate(table.levels):
        tuples = level_tuple_array(arity, 2 * s, table.max_degree)
        for row, v in zip(tuples, values):
            sink.write(",".join(str(int(x)) for x in row) + "," + repr(float(v)) + "\n")


def write_json_meta(table: IntegralTable, sink) -> None:
    json.dump(
        {
            "kind": table.kind,
            "arity": table.arity,
            "max_degree": table.max_degree,
            "record_count": table.record_count,
            "generator_version": table.generator_version,
        },
        sink,
        indent=2,
    )
    sink.write("\n")


def y_canonical_tuples(max_degree: int) -> list[tuple[int, int, int, int]]:
    """Distinct Y representatives up to symmetry: i > j, k > l,
    (i, j) >= (k, l) lexicographically, even level, ordered by (level
    ascending, tuple lexicographically decreasing)."""
    per_level: dict[int, list[tuple[int, int, int, int]]] = {}
    for i in range(max_degree, -1, -1):
        for j in range(i - 1, -1, -1):
            for k in range(i, -1, -1):
                for l in range(k - 1, -1, -1):
                    if (k, l) > (i, j):
                        continue
                    lvl = i + j + k + l
                    if lvl % 2:
                        continue
                    per_level.setdefault(lvl, []).append((i, j, k, l))
    out: list[tuple[int, int, int, int]] = []
    for lvl in sorted(per_level):
        out.extend(sorted(per_level[lvl], reverse=True))
    return out


def write_y_binary(w_table: IntegralTable, sink) -> int:
    """Export the derived Y values over canonical Y tuples."""
    tuples = y_canonical_tuples(w_table.max_degree)
    total = _write_header(sink, "Y", 4, w_table.max_degree, len(tuples))
    rec = _record_dtype(4)
    block = np.empty(len(tuples), dtype=rec)
    for r, t in enumerate(tuples):
        block["idx"][r] = t
        block["val"][r] = y_value(w_table, t).value
    payload = block.tobytes()
    sink.write(payload)
    return total + len(payload)


def write_y_csv(w_table: IntegralTable, sink) -> None:
    sink.write(_csv_header(4))
    for t in y_canonical_tuples(w_table.max_degree):
        v = y_value(w_table, t).value
        sink.write(",".join(str(x) for x in t) + "," + repr(float(v)) + "\n")


def write_y_json_meta(w_table: IntegralTable, sink) -> None:
    json.dump(
        {
            "kind": "Y",
            "arity": 4,
            "max_degree": w_table.max_degree,
            "record_count": len(y_canonical_tuples(w_table.max_degree)),
            "generator_version": w_table.generator_version,
        },
        sink,
        indent=2,
    )
    sink.write("\n")
