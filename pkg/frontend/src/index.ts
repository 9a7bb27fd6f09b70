import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runCli } from "./cli.js";
import { UsageError } from "./errors.js";
import { parseHpit, type ParsedTable, type TableKind } from "./hpit.js";

export { FormatError, IoError, MemoryCapError, UsageError } from "./errors.js";
export type { TableKind } from "./hpit.js";

/**
 * Immutable handle over a built table.  Queries never mutate; any number of
 * concurrent readers is fine.
 */
export class TableHandle {
  readonly kind: TableKind;
  readonly maxDegree: number;
  readonly recordCount: number;
  /** @internal */
  readonly table: ParsedTable;

  constructor(table: ParsedTable) {
    this.kind = table.kind;
    this.maxDegree = table.maxDegree;
    this.recordCount = table.recordCount;
    this.table = table;
  }
}

/** Build a W or U table through the CLI and load it. */
export function buildTable(kind: TableKind, maxDegree: number): TableHandle {
  if (!Number.isInteger(maxDegree)) {
    throw new UsageError("max_degree must be an integer");
  }
  const dir = mkdtempSync(join(tmpdir(), "hpint-"));
  try {
    const out = join(dir, "table.hpit");
    runCli([
      "build",
      "--kind",
      kind,
      "--max-degree",
      String(maxDegree),
      "--format",
      "bin",
      "--out",
      out,
    ]);
    return new TableHandle(parseHpit(readFileSync(out)));
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

/** Load a previously written HPIT binary file. */
export function openTable(path: string): TableHandle {
  return new TableHandle(parseHpit(readFileSync(path)));
}

function checkIndices(h: TableHandle, indices: number[]): void {
  if (indices.length !== h.table.arity) {
    throw new UsageError(
      `expected ${h.table.arity} indices, got ${indices.length}`,
    );
  }
  for (const x of indices) {
    if (!Number.isInteger(x) || x < 0) {
      throw new UsageError(`indices must be non-negative integers, got ${x}`);
    }
    if (x > h.maxDegree) {
      throw new UsageError(`index ${x} exceeds table max_degree ${h.maxDegree}`);
    }
  }
}

function sortedLookup(h: TableHandle, indices: number[]): number {
  const key = [...indices].sort((a, b) => b - a).join(",");
  const v = h.table.values.get(key);
  if (v === undefined) {
    throw new UsageError(`tuple ${key} not present in table`);
  }
  return v;
}

/**
 * Permutation-invariant lookup, bit-identical to the CLI's query output for
 * the same table: odd index sums are exactly 0, everything else is the
 * stored canonical value.
 */
export function query(h: TableHandle, indices: number[]): number {
  checkIndices(h, indices);
  const level = indices.reduce((a, b) => a + b, 0);
  if (level % 2 === 1) {
    return 0.0;
  }
  return sortedLookup(h, indices);
}

/**
 * Derivative-bracket value from a W table.  Mirrors the reference
 * evaluation operation for operation: the signed canonical representative
 * is computed first, then the four-term kernel in fixed order, so results
 * are bit-identical to the CLI across the whole symmetry orbit.
 */
export function queryY(
  h: TableHandle,
  indices: [number, number, number, number] | number[],
): number {
  if (h.kind !== "W") {
    throw new UsageError(`Y is evaluated from a kind=W table, got ${h.kind}`);
  }
  if (indices.length !== 4) {
    throw new UsageError(`expected 4 indices, got ${indices.length}`);
  }
  checkIndices(h, indices as number[]);
  let [i, j, k, l] = indices as [number, number, number, number];
  if (i === j || k === l) {
    return 0.0;
  }
  if ((i + j + k + l) % 2 === 1) {
    return 0.0;
  }
  let sign = 1;
  if (i < j) {
    [i, j] = [j, i];
    sign = -sign;
  }
  if (k < l) {
    [k, l] = [l, k];
    sign = -sign;
  }
  if (i < k || (i === k && j < l)) {
    [i, j, k, l] = [k, l, i, j];
  }
  const wv = (a: number, b: number, c: number, d: number): number =>
    sortedLookup(h, [a, b, c, d]);
  const t1 = i && k ? Math.sqrt(i * k) * wv(i - 1, j, k - 1, l) : 0.0;
  const t2 = i && l ? Math.sqrt(i * l) * wv(i - 1, j, k, l - 1) : 0.0;
  const t3 = j && k ? Math.sqrt(j * k) * wv(i, j - 1, k - 1, l) : 0.0;
  const t4 = j && l ? Math.sqrt(j * l) * wv(i, j - 1, k, l - 1) : 0.0;
  const v = 2.0 * (t1 - t2 - t3 + t4);
  return sign * v;
}
