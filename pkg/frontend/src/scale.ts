/** Axis scales and tick generation with deterministic arithmetic. */

export interface Scale {
  /** Map a data value to a pixel coordinate. */
  toPx(value: number): number;
  ticks: number[];
  domain: [number, number];
  kind: "linear" | "log";
}

/** Round a raw step to the nearest 1/2/5 decade step not below it. */
function niceStep(raw: number): number {
  const exponent = Math.floor(Math.log10(raw));
  const base = 10 ** exponent;
  const mantissa = raw / base;
  if (mantissa <= 1) return base;
  if (mantissa <= 2) return 2 * base;
  if (mantissa <= 5) return 5 * base;
  return 10 * base;
}

export function linearScale(
  lo: number,
  hi: number,
  pxLo: number,
  pxHi: number,
  maxTicks = 6,
): Scale {
  if (!(hi > lo)) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.5;
    lo -= pad;
    hi += pad;
  }
  const step = niceStep((hi - lo) / maxTicks);
  const first = Math.ceil(lo / step);
  const last = Math.floor(hi / step);
  const ticks: number[] = [];
  for (let k = first; k <= last; k += 1) {
    const value = k * step;
    ticks.push(value === 0 ? 0 : value);
  }
  const span = hi - lo;
  return {
    toPx: (value) => pxLo + ((value - lo) / span) * (pxHi - pxLo),
    ticks,
    domain: [lo, hi],
    kind: "linear",
  };
}

export function logScale(
  lo: number,
  hi: number,
  pxLo: number,
  pxHi: number,
): Scale {
  if (!(lo > 0) || !(hi > lo)) {
    throw new RangeError(`log scale needs 0 < lo < hi, got [${lo}, ${hi}]`);
  }
  const logLo = Math.log10(lo);
  const logHi = Math.log10(hi);
  const ticks: number[] = [];
  for (let k = Math.ceil(logLo); k <= Math.floor(logHi); k += 1) {
    ticks.push(10 ** k);
  }
  return {
    toPx: (value) =>
      pxLo + ((Math.log10(value) - logLo) / (logHi - logLo)) * (pxHi - pxLo),
    ticks,
    domain: [lo, hi],
    kind: "log",
  };
}

/** Finite extent of several arrays, ignoring NaN; error when empty. */
export function extent(arrays: readonly Float64Array[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const values of arrays) {
    for (const v of values) {
      if (!Number.isFinite(v)) continue;
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === Infinity) {
    throw new RangeError("no finite values to scale");
  }
  return [lo, hi];
}
