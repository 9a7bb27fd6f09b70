/** Error taxonomy mirroring the CLI's exit codes. */

export class UsageError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "UsageError";
  }
}

export class MemoryCapError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MemoryCapError";
  }
}

export class IoError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "IoError";
  }
}

export class FormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FormatError";
  }
}
