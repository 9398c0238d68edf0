/** Error taxonomy mapped to process exit codes by the runner. */

/** Bad invocation or unknown figure name (exit code 2). */
export class UsageError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "UsageError";
  }
}

/** Missing/mismatched columns, empty tables, unreadable inputs (exit code 1). */
export class DataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "DataError";
  }
}
