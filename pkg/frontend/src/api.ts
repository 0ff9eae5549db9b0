// Typed client for the staffing service's /api/v1 endpoints.
// The UI never computes probabilities itself: everything numeric on screen
// comes from one of these responses.

export type AttributeKind = 'categorical' | 'numeric';

export interface AttributeSpec {
  name: string;
  kind: AttributeKind;
  values?: string[];
}

export interface ModelSummary {
  schema: {
    class_attribute: string;
    class_labels: string[];
    attributes: AttributeSpec[];
  };
  priors: Record<string, number>;
  vocabulary: Record<string, string[]>;
  n: number;
  alpha: number;
  model_fingerprint: string;
}

export interface Prediction {
  posterior: Record<string, number>;
  label: string;
  log_scores: Record<string, number | null>;
  model_fingerprint?: string;
}

export interface WhatIfResult {
  before: Prediction;
  after: Prediction;
  attribute: string;
  old_value: string | number | null;
  new_value: string | number | null;
  delta: Record<string, number>;
  model_fingerprint?: string;
}

export interface Rule {
  attribute: string;
  value: string;
  class: string;
  confidence: number;
  support: number;
}

export interface InfluenceEntry {
  attribute: string;
  mutual_information: number;
}

export interface TeamRecommendation {
  members: { id: string; score: number }[];
  target_class: string;
  team_size: number;
  undersized: boolean;
  model_fingerprint?: string;
}

export interface PoolEntry {
  id: string;
  values: Record<string, string | number | null>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, 'unreachable', `service unreachable: ${String(err)}`);
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const code = body?.error?.code ?? 'unknown_error';
    const message = body?.error?.message ?? `HTTP ${response.status}`;
    throw new ApiError(response.status, code, message);
  }
  return body as T;
}

function post(body: unknown): RequestInit {
  return {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  };
}

export class ApiClient {
  constructor(readonly base: string) {}

  private url(path: string): string {
    return `${this.base}/api/v1${path}`;
  }

  modelSummary(): Promise<ModelSummary> {
    return request<ModelSummary>(this.url('/model'));
  }

  rules(): Promise<{ rules: Rule[] }> {
    return request(this.url('/rules'));
  }

  influence(): Promise<{ influence: InfluenceEntry[] }> {
    return request(this.url('/influence'));
  }

  predict(values: Record<string, string | number | null>): Promise<Prediction> {
    return request(this.url('/predict'), post({ values }));
  }

  whatIf(
    values: Record<string, string | number | null>,
    attribute: string,
    newValue: string | number | null,
  ): Promise<WhatIfResult> {
    return request(this.url('/whatif'), post({ values, attribute, new_value: newValue }));
  }

  recommend(
    pool: PoolEntry[],
    teamSize: number,
    targetClass?: string,
    threshold?: number,
  ): Promise<TeamRecommendation> {
    const body: Record<string, unknown> = { pool, team_size: teamSize };
    if (targetClass !== undefined) body.target_class = targetClass;
    if (threshold !== undefined) body.threshold = threshold;
    return request(this.url('/recommend'), post(body));
  }
}
