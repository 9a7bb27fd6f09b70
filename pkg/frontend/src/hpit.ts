import { FormatError } from "./errors.js";

/**
 * Parser for the HPIT binary layout (all little-endian): 20-byte header
 * (magic "HPIT", u16 version=1, u8 kind 0=W/1=Y/2=U, u8 arity, u16 max
 * degree, 2 reserved, u64 record count) followed by records of arity x u16
 * sorted indices + f8 value, ordered by (level, rank).
 */

export type TableKind = "W" | "U";

export interface ParsedTable {
  kind: TableKind;
  arity: 4 | 6;
  maxDegree: number;
  recordCount: number;
  /** canonical "i,j,k,l[,m,n]" (non-increasing) -> stored float64 bits */
  values: Map<string, number>;
}

const HEADER_SIZE = 20;

export function parseHpit(raw: Buffer): ParsedTable {
  if (raw.length < HEADER_SIZE) {
    throw new FormatError("truncated stream: incomplete header");
  }
  const view = new DataView(raw.buffer, raw.byteOffset, raw.byteLength);
  if (raw.toString("latin1", 0, 4) !== "HPIT") {
    throw new FormatError("bad magic");
  }
  const version = view.getUint16(4, true);
  if (version !== 1) {
    throw new FormatError(`unsupported format version ${version}`);
  }
  const kindCode = view.getUint8(6);
  const arity = view.getUint8(7);
  if (kindCode === 1) {
    throw new FormatError("Y files are derived exports, not loadable tables");
  }
  if (kindCode !== 0 && kindCode !== 2) {
    throw new FormatError(`unknown kind code ${kindCode}`);
  }
  const kind: TableKind = kindCode === 0 ? "W" : "U";
  if (arity !== (kind === "W" ? 4 : 6)) {
    throw new FormatError(`kind ${kind} with arity ${arity}`);
  }
  const maxDegree = view.getUint16(8, true);
  const recordCount = Number(view.getBigUint64(12, true));
  const recordSize = arity * 2 + 8;
  if (raw.length !== HEADER_SIZE + recordCount * recordSize) {
    throw new FormatError(
      `truncated stream: expected ${recordCount} records, ` +
        `got ${raw.length - HEADER_SIZE} payload bytes`,
    );
  }
  const values = new Map<string, number>();
  let offset = HEADER_SIZE;
  let prevLevel = -1;
  for (let r = 0; r < recordCount; r++) {
    const idx: number[] = [];
    for (let p = 0; p < arity; p++) {
      idx.push(view.getUint16(offset + 2 * p, true));
    }
    for (let p = 1; p < arity; p++) {
      if (idx[p] > idx[p - 1]) {
        throw new FormatError(`non-canonical record at offset ${offset}`);
      }
    }
    const level = idx.reduce((a, b) => a + b, 0);
    if (level < prevLevel) {
      throw new FormatError(`out-of-order record at offset ${offset}`);
    }
    prevLevel = level;
    values.set(idx.join(","), view.getFloat64(offset + 2 * arity, true));
    offset += recordSize;
  }
  return { kind, arity: arity as 4 | 6, maxDegree, recordCount, values };
}
