import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { runCli } from "../src/cli.js";
import { openTable, query, queryY, type TableHandle } from "../src/index.js";

/**
 * Binding/CLI parity: 1000 random (kind, tuple) queries must return
 * bit-identical values through the bindings and through `hpint query`.
 * The CLI prints 17 significant digits, which round-trips float64 exactly.
 */

const dir = mkdtempSync(join(tmpdir(), "hpint-parity-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

const W_MAX = 6;
const U_MAX = 4;

const wPath = join(dir, "w.hpit");
const uPath = join(dir, "u.hpit");
runCli(["build", "--kind", "W", "--max-degree", String(W_MAX), "--format", "bin", "--out", wPath]);
runCli(["build", "--kind", "U", "--max-degree", String(U_MAX), "--format", "bin", "--out", uPath]);
const wTable = openTable(wPath);
const uTable = openTable(uPath);

// deterministic 32-bit LCG so failures are reproducible
let seed = 0x9e3779b9 >>> 0;
function nextInt(bound: number): number {
  seed = (Math.imul(seed, 1664525) + 1013904223) >>> 0;
  return seed % bound;
}

function randomTuple(arity: number, maxDegree: number): number[] {
  return Array.from({ length: arity }, () => nextInt(maxDegree + 1));
}

function bits(x: number): bigint {
  const view = new DataView(new ArrayBuffer(8));
  view.setFloat64(0, x, true);
  return view.getBigUint64(0, true);
}

function cliValues(kind: string, tablePath: string, tuples: number[][]): number[] {
  const out: number[] = [];
  const batch = 100;
  for (let at = 0; at < tuples.length; at += batch) {
    const args = ["query", "--kind", kind, "--table", tablePath];
    for (const t of tuples.slice(at, at + batch)) {
      args.push("--indices", t.join(","));
    }
    const res = runCli(args);
    for (const line of res.stdout.toString().trim().split("\n")) {
      out.push(parseFloat(line));
    }
  }
  return out;
}

function checkKind(
  kind: string,
  table: TableHandle,
  tablePath: string,
  n: number,
  arity: number,
  maxDegree: number,
  bound: (t: number[]) => number,
): number {
  const tuples = Array.from({ length: n }, () => randomTuple(arity, maxDegree));
  const fromCli = cliValues(kind, tablePath, tuples);
  expect(fromCli.length).toBe(n);
  let mismatches = 0;
  tuples.forEach((t, at) => {
    if (bits(bound(t)) !== bits(fromCli[at])) {
      mismatches += 1;
    }
  });
  return mismatches;
}

describe("binding/CLI parity", () => {
  it("1000 random queries are bit-identical", () => {
    let mismatches = 0;
    mismatches += checkKind("W", wTable, wPath, 400, 4, W_MAX, (t) =>
      query(wTable, t),
    );
    mismatches += checkKind("U", uTable, uPath, 300, 6, U_MAX, (t) =>
      query(uTable, t),
    );
    mismatches += checkKind("Y", wTable, wPath, 300, 4, W_MAX, (t) =>
      queryY(wTable, t),
    );
    expect(mismatches).toBe(0);
  }, 120_000);
});
