import { spawnSync } from "node:child_process";

import { IoError, MemoryCapError, UsageError } from "./errors.js";

/**
 * The CLI entry point.  HPINT_CLI overrides it (whitespace-separated, e.g.
 * "python3 -m hpint"); otherwise the installed `hpint` script is tried,
 * falling back to `python3 -m hpint`.
 */
const CANDIDATES: string[][] = process.env.HPINT_CLI
  ? [process.env.HPINT_CLI.trim().split(/\s+/)]
  : [["hpint"], ["python3", "-m", "hpint"]];

let resolved: string[] | undefined;

export interface CliResult {
  stdout: Buffer;
  stderr: string;
}

export function runCli(args: string[]): CliResult {
  const tried: string[] = [];
  for (const candidate of resolved ? [resolved] : CANDIDATES) {
    const res = spawnSync(candidate[0], [...candidate.slice(1), ...args], {
      maxBuffer: 1 << 28,
    });
    if (res.error && (res.error as NodeJS.ErrnoException).code === "ENOENT") {
      tried.push(candidate.join(" "));
      continue;
    }
    if (res.error) {
      throw new IoError(`failed to run ${candidate.join(" ")}: ${res.error.message}`);
    }
    resolved = candidate;
    const stderr = res.stderr.toString();
    switch (res.status) {
      case 0:
        return { stdout: res.stdout, stderr };
      case 2:
        throw new UsageError(stderr.trim() || "bad flags or indices");
      case 3:
        throw new MemoryCapError(stderr.trim());
      case 4:
        throw new IoError(stderr.trim());
      default:
        throw new IoError(
          `CLI exited with code ${res.status}: ${stderr.trim()}`,
        );
    }
  }
  throw new IoError(
    `no working CLI found (tried: ${tried.join("; ")}); set HPINT_CLI`,
  );
}
