import type {
  AnalysisStatusBody,
  ChipAllocation,
  FeedbackBody,
  InterpretationRow,
  SessionEnvelope,
} from './types';

export class ApiError extends Error {
  status: number;
  type: string;

  constructor(status: number, type: string, message: string) {
    super(message);
    this.status = status;
    this.type = type;
  }
}

async function request<T>(
  base: string,
  path: string,
  init: RequestInit = {},
): Promise<T> {
  const res = await fetch(base + path, {
    headers: { 'Content-Type': 'application/json' },
    ...init,
  });
  if (!res.ok) {
    let type = 'HttpError';
    let message = `${res.status} ${res.statusText}`;
    try {
      const body = await res.json();
      if (body?.error) {
        type = body.error.type ?? type;
        message = body.error.message ?? message;
      } else if (body?.detail) {
        // FastAPI's own validation errors use {detail: [...]}
        type = 'ValidationError';
        message = JSON.stringify(body.detail);
      }
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(res.status, type, message);
  }
  return res.json() as Promise<T>;
}

export class ServiceClient {
  constructor(readonly base: string = '') {}

  createSession(scale: string, sigma?: number, rMin?: number): Promise<SessionEnvelope> {
    return request(this.base, '/sessions', {
      method: 'POST',
      body: JSON.stringify({ scale, sigma: sigma ?? null, r_min: rMin ?? 1.0 }),
    });
  }

  getSession(id: string): Promise<SessionEnvelope> {
    return request(this.base, `/sessions/${id}`);
  }

  postStage1(id: string, certainIdentical: boolean): Promise<SessionEnvelope> {
    return request(this.base, `/sessions/${id}/stage1`, {
      method: 'POST',
      body: JSON.stringify({ certain_identical: certainIdentical }),
    });
  }

  postStage2(id: string, rMax: number | null): Promise<SessionEnvelope> {
    return request(this.base, `/sessions/${id}/stage2`, {
      method: 'POST',
      body: JSON.stringify({ r_max: rMax }),
    });
  }

  putChips(id: string, allocation: ChipAllocation): Promise<SessionEnvelope> {
    return request(this.base, `/sessions/${id}/chips`, {
      method: 'PUT',
      body: JSON.stringify(allocation),
    });
  }

  getFeedback(id: string, signal?: AbortSignal): Promise<FeedbackBody> {
    return request(this.base, `/sessions/${id}/feedback`, { signal });
  }

  finalize(id: string, decline = false): Promise<SessionEnvelope> {
    return request(this.base, `/sessions/${id}/finalize`, {
      method: 'POST',
      body: JSON.stringify({ decline }),
    });
  }

  startAnalysis(body: {
    dataset: unknown;
    effect: 'FixedEffect' | 'RandomEffects';
    prior?: Record<string, unknown> | null;
    mcmc?: Record<string, number>;
  }): Promise<{ run_id: string; status: string }> {
    return request(this.base, '/analyses', {
      method: 'POST',
      body: JSON.stringify(body),
    });
  }

  getAnalysis(runId: string): Promise<AnalysisStatusBody> {
    return request(this.base, `/analyses/${runId}`);
  }

  getInterpretation(scale: string, sigma?: number): Promise<{ scale: string; rows: InterpretationRow[] }> {
    const q = new URLSearchParams({ scale });
    if (sigma !== undefined) q.set('sigma', String(sigma));
    return request(this.base, `/interpretation?${q}`);
  }
}
