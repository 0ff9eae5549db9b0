// Session state. Probabilities held here are verbatim service responses;
// the what-if history is append-only for the lifetime of the page.

import type {
  AttributeSpec,
  ModelSummary,
  PoolEntry,
  Prediction,
  TeamRecommendation,
  WhatIfResult,
} from './api.js';

export const MISSING = '';

export interface AppState {
  summary: ModelSummary | null;
  formValues: Record<string, string>; // raw form strings; '' means missing
  prediction: Prediction | null;
  whatIfHistory: WhatIfResult[];
  pool: PoolEntry[];
  poolErrors: string[];
  recommendation: TeamRecommendation | null;
  banner: string | null;
  lastResponses: Record<string, unknown>; // debug view, for test assertions
}

export function initialState(): AppState {
  return {
    summary: null,
    formValues: {},
    prediction: null,
    whatIfHistory: [],
    pool: [],
    poolErrors: [],
    recommendation: null,
    banner: null,
    lastResponses: {},
  };
}

export function appendWhatIf(state: AppState, result: WhatIfResult): void {
  state.whatIfHistory.push(result); // append-only by contract
}

/**
 * Convert raw form strings into an instance value map: '' is missing (null),
 * numeric attributes parse as numbers. Throws on an unparsable number.
 */
export function valuesFromForm(
  attributes: AttributeSpec[],
  formValues: Record<string, string>,
): Record<string, string | number | null> {
  const values: Record<string, string | number | null> = {};
  for (const spec of attributes) {
    const raw = (formValues[spec.name] ?? MISSING).trim();
    if (raw === MISSING || raw === '?') {
      values[spec.name] = null;
    } else if (spec.kind === 'numeric') {
      const parsed = Number(raw);
      if (!Number.isFinite(parsed)) {
        throw new Error(`${spec.name}: not a number: ${raw}`);
      }
      values[spec.name] = parsed;
    } else {
      values[spec.name] = raw;
    }
  }
  return values;
}

export function duplicatePoolIds(pool: PoolEntry[]): string[] {
  const seen = new Set<string>();
  const dupes = new Set<string>();
  for (const entry of pool) {
    if (seen.has(entry.id)) dupes.add(entry.id);
    seen.add(entry.id);
  }
  return [...dupes].sort();
}

/**
 * Latest-wins guard for in-flight requests: a response only renders if no
 * newer request of the same kind has started since.
 */
export class Sequencer {
  private counters = new Map<string, number>();

  begin(kind: string): number {
    const next = (this.counters.get(kind) ?? 0) + 1;
    this.counters.set(kind, next);
    return next;
  }

  isCurrent(kind: string, token: number): boolean {
    return this.counters.get(kind) === token;
  }
}
