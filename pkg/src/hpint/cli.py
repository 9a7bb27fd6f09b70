"""Command-line driver: build, query, verify, bench tables; run the demo.

Exit codes: 0 success; 1 verify tolerance breach; 2 bad flags or indices;
3 memory-cap refusal; 4 I/O failure.  Data goes to stdout, diagnostics to
stderr.  HPINT_THREADS caps build parallelism.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time

from .indexing import ARITY, IndexRangeError, level_tuple_array
from .oracle import exact_u, exact_w, exact_y, quadrature_value
from .tables import (
    DEFAULT_MEMORY_CAP,
    IntegralTable,
    MemoryCapError,
    build_u_table,
    build_w_table,
    estimate_table_bytes,
    u_value,
    w_value,
    y_value,
)
from .tableio import (
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
from .cidemo import build_hamiltonian, ground_state_energy

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_MEMORY = 3
EXIT_IO = 4

# structural zeros get an absolute criterion; relative error is undefined there
ZERO_FLOOR = 1e-15


class _UsageError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hpint",
        description="Tables of Gaussian-weighted Hermite polynomial product integrals",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a table and write it out")
    b.add_argument("--kind", required=True, choices=["W", "U", "Y"])
    b.add_argument("--max-degree", type=int, default=None)
    b.add_argument("--out", required=True, help="output path ('-' for stdout)")
    b.add_argument("--format", required=True, choices=["bin", "csv", "json"])
    b.add_argument("--from-w", default=None, help="W table file to derive a Y export from")
    b.add_argument("--mem-cap", type=int, default=DEFAULT_MEMORY_CAP)

    q = sub.add_parser("query", help="look up single values")
    q.add_argument("--kind", required=True, choices=["W", "Y", "U"])
    q.add_argument(
        "--indices",
        action="append",
        required=True,
        help="comma-separated indices i,j,k,l[,m,n]; repeatable",
    )
    q.add_argument("--table", default=None, help="table file (W table for kind Y)")
    q.add_argument("--max-degree", type=int, default=None)

    v = sub.add_parser("verify", help="compare a table against the oracles")
    v.add_argument("--kind", required=True, choices=["W", "Y", "U"])
    v.add_argument("--max-degree", type=int, required=True)
    v.add_argument("--oracle", default="exact", choices=["exact", "quadrature", "both"])
    v.add_argument("--tol", type=float, default=1e-10)

    n = sub.add_parser("bench", help="time table construction")
    n.add_argument("--kind", required=True, choices=["W", "U", "Y"])
    n.add_argument("--max-degree", type=int, required=True)
    n.add_argument("--repeat", type=int, default=3)

    d = sub.add_parser("demo", help="run a downstream consumer")
    dsub = d.add_subparsers(dest="demo_name", required=True)
    tb = dsub.add_parser("two-boson", help="contact-interacting pair in a trap")
    tb.add_argument("--g", type=float, required=True)
    tb.add_argument("--max-degree", type=int, required=True)
    tb.add_argument("--table", default=None)
    return ap


def _parse_indices(spec: str, arity: int) -> tuple[int, ...]:
    try:
        idx = tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise _UsageError(f"indices must be integers, got {spec!r}") from None
    if len(idx) != arity:
        raise _UsageError(f"expected {arity} indices, got {len(idx)} in {spec!r}")
    if any(x < 0 for x in idx):
        raise _UsageError(f"indices must be non-negative, got {spec!r}")
    return idx


def _load_table(path: str) -> IntegralTable:
    with open(path, "rb") as f:
        return read_binary(f)


@contextlib.contextmanager
def _open_sink(path: str, binary: bool):
    if path == "-":
        if binary:
            if sys.stdout.isatty():
                raise _UsageError("refusing to write binary table data to a terminal")
            yield sys.stdout.buffer
        else:
            yield sys.stdout
    else:
        with open(path, "wb" if binary else "w") as f:
            yield f


def _cmd_build(args) -> int:
    if args.kind == "Y":
        if not args.from_w:
            raise _UsageError(
                "Y is derived; query it or export via --kind Y --from-w WTABLE"
            )
        w = _load_table(args.from_w)
        if w.kind != "W":
            raise _UsageError(f"--from-w file holds a kind={w.kind} table")
        t0 = time.perf_counter()
        records = len(y_canonical_tuples(w.max_degree))
        with _open_sink(args.out, args.format == "bin") as sink:
            if args.format == "bin":
                write_y_binary(w, sink)
            elif args.format == "csv":
                write_y_csv(w, sink)
            else:
                write_y_json_meta(w, sink)
        print(f"records={records} seconds={time.perf_counter() - t0:.3f}")
        return EXIT_OK

    if args.max_degree is None:
        raise _UsageError("build needs --max-degree")
    if args.max_degree < 0:
        raise _UsageError("max_degree must be >= 0")
    builder = build_w_table if args.kind == "W" else build_u_table
    t0 = time.perf_counter()
    table = builder(args.max_degree, memory_cap_bytes=args.mem_cap)
    with _open_sink(args.out, args.format == "bin") as sink:
        if args.format == "bin":
            write_binary(table, sink)
        elif args.format == "csv":
            write_csv(table, sink)
        else:
            write_json_meta(table, sink)
    print(f"records={table.record_count} seconds={time.perf_counter() - t0:.3f}")
    return EXIT_OK


def _cmd_query(args) -> int:
    arity = ARITY[args.kind]
    tuples = [_parse_indices(s, arity) for s in args.indices]
    if args.table is not None:
        table = _load_table(args.table)
        want = "W" if args.kind in ("W", "Y") else "U"
        if table.kind != want:
            raise _UsageError(
                f"kind {args.kind} needs a {want} table, file holds {table.kind}"
            )
    else:
        if args.max_degree is None:
            raise _UsageError("query needs --table or --max-degree")
        if args.max_degree < 0:
            raise _UsageError("max_degree must be >= 0")
        needed = max((max(t) for t in tuples), default=0)
        if needed > args.max_degree:
            raise _UsageError(
                f"index {needed} exceeds --max-degree {args.max_degree}"
            )
        builder = build_w_table if args.kind in ("W", "Y") else build_u_table
        table = builder(args.max_degree)
    lookup = {"W": w_value, "U": u_value, "Y": y_value}[args.kind]
    for t in tuples:
        try:
            res = lookup(table, t)
        except IndexRangeError as exc:
            raise _UsageError(str(exc)) from None
        line = f"{res.value:.17g}"
        if res.zero_reason:
            line += f" ({res.zero_reason})"
        print(line)
    return EXIT_OK


def _verify_tuples(kind: str, max_degree: int):
    if kind in ("W", "U"):
        arity = ARITY[kind]
        for lvl in range(0, arity * max_degree + 1, 2):
            for row in level_tuple_array(arity, lvl, max_degree):
                yield tuple(int(x) for x in row)
    else:
        yield from y_canonical_tuples(max_degree)


def _cmd_verify(args) -> int:
    if args.tol <= 0:
        raise _UsageError("--tol must be > 0")
    if args.max_degree < 0:
        raise _UsageError("max_degree must be >= 0")
    builder = build_w_table if args.kind in ("W", "Y") else build_u_table
    table = builder(args.max_degree)
    lookup = {"W": w_value, "U": u_value, "Y": y_value}[args.kind]
    exact = {"W": exact_w, "U": exact_u, "Y": exact_y}[args.kind]

    oracles = []
    if args.oracle in ("exact", "both"):
        oracles.append(("exact", lambda t: exact(*t).as_float()))
    if args.oracle in ("quadrature", "both"):
        oracles.append(("quadrature", lambda t: quadrature_value(args.kind, t)))

    worst_err = 0.0
    worst = None
    checked = 0
    for t in _verify_tuples(args.kind, args.max_degree):
        got = lookup(table, t).value
        for name, fn in oracles:
            ref = fn(t)
            if abs(ref) <= ZERO_FLOOR:
                # indistinguishable from a structural zero; measure absolutely
                err = 0.0 if abs(got) <= ZERO_FLOOR else abs(got - ref) / ZERO_FLOOR
            else:
                err = abs(got - ref) / abs(ref)
            if err > worst_err:
                worst_err = err
                worst = (name, t)
        checked += 1
    print(f"checked={checked} max_rel_err={worst_err:.3e} worst={worst}")
    return EXIT_OK if worst_err <= args.tol else EXIT_TOLERANCE


def _cmd_bench(args) -> int:
    if args.kind == "Y":
        raise _UsageError("bench covers stored tables (W, U); Y is derived")
    if args.max_degree < 0:
        raise _UsageError("max_degree must be >= 0")
    if args.repeat < 1:
        raise _UsageError("--repeat must be >= 1")
    builder = build_w_table if args.kind == "W" else build_u_table
    best = float("inf")
    records = 0
    for _ in range(args.repeat):
        t0 = time.perf_counter()
        table = builder(args.max_degree)
        best = min(best, time.perf_counter() - t0)
        records = table.record_count
    peak = estimate_table_bytes(args.kind, args.max_degree)
    print(
        f"entries={records} best_seconds={best:.3f} "
        f"entries_per_second={records / best:.3e} peak_table_bytes={peak}"
    )
    return EXIT_OK


def _cmd_demo(args) -> int:
    if args.max_degree < 0:
        raise _UsageError("max_degree must be >= 0")
    if args.table is not None:
        w = _load_table(args.table)
        if w.kind != "W" or w.max_degree < args.max_degree:
            raise _UsageError(
                f"demo needs a W table with max_degree >= {args.max_degree}"
            )
    else:
        w = build_w_table(args.max_degree)
    h = build_hamiltonian(args.max_degree, args.g, w)
    e0 = ground_state_energy(h)
    print(f"E={e0:.12f} basis={len(h.basis)}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching the documented code
        return int(exc.code or 0)
    handler = {
        "build": _cmd_build,
        "query": _cmd_query,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
        "demo": _cmd_demo,
    }[args.command]
    try:
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except (OSError, TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
