// Display formatting. Probabilities always show 4 decimals so they can be
// checked verbatim against the service response (see the debug view).

export function fmtProb(p: number): string {
  return p.toFixed(4);
}

export function fmtPercent(p: number): string {
  return `${(p * 100).toFixed(1)}%`;
}

export function fmtDelta(d: number): string {
  const sign = d > 0 ? '+' : '';
  return `${sign}${d.toFixed(4)}`;
}

/** CSS class for a what-if delta: green up, red down, neutral zero. */
export function deltaClass(d: number): 'delta-pos' | 'delta-neg' | 'delta-zero' {
  if (d > 0) return 'delta-pos';
  if (d < 0) return 'delta-neg';
  return 'delta-zero';
}

export function fmtBits(mi: number): string {
  return `${mi.toFixed(4)} bits`;
}
