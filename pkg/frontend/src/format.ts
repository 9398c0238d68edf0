/** Deterministic number formatting for SVG output. */

/**
 * Fixed-precision coordinate string with trailing zeros trimmed and
 * negative zero normalized, so identical inputs always produce
 * identical bytes.
 */
export function fmt(value: number, decimals = 2): string {
  if (!Number.isFinite(value)) {
    throw new RangeError(`cannot format non-finite value ${value}`);
  }
  let text = value.toFixed(decimals);
  if (text.includes(".")) {
    text = text.replace(/0+$/, "").replace(/\.$/, "");
  }
  return text === "-0" ? "0" : text;
}

/** Tick-label formatting: plain decimals near 1, powers of ten far out. */
export function fmtTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 0.01 && magnitude < 10_000) {
    return fmt(value, 4);
  }
  const exponent = Math.floor(Math.log10(magnitude));
  const mantissa = value / 10 ** exponent;
  const head = fmt(mantissa, 2);
  return head === "1" ? `1e${exponent}` : `${head}e${exponent}`;
}
