/** Thin client for the comparison API.
 *
 * Errors are split into ValidationError (400: surface the detail inline) and
 * ApiUnavailableError (network trouble or 5xx: offer a retry). A caller-owned
 * AbortSignal cancels an in-flight comparison when a new one is submitted.
 */

import type { ApiErrorBody, CompareRequest, ComparisonPayload } from './types.js';

export class ValidationError extends Error {
  constructor(public detail: string) {
    super(detail);
    this.name = 'ValidationError';
  }
}

export class ApiUnavailableError extends Error {
  constructor(message: string, public body?: ApiErrorBody) {
    super(message);
    this.name = 'ApiUnavailableError';
  }
}

/** Resolve the API base URL: ?api=... query param, a window global, or same origin. */
export function apiBaseUrl(): string {
  if (typeof window !== 'undefined') {
    const fromQuery = new URLSearchParams(window.location.search).get('api');
    if (fromQuery) return fromQuery.replace(/\/$/, '');
    const fromGlobal = (window as { FARECMP_API?: string }).FARECMP_API;
    if (fromGlobal) return fromGlobal.replace(/\/$/, '');
    return window.location.origin;
  }
  return 'http://127.0.0.1:8000';
}

export class FareApi {
  constructor(private base: string) {}

  async getAreas(signal?: AbortSignal): Promise<string[]> {
    let resp: Response;
    try {
      resp = await fetch(`${this.base}/v1/areas`, { signal });
    } catch (err) {
      if (err instanceof DOMException && err.name === 'AbortError') throw err;
      throw new ApiUnavailableError(`cannot reach ${this.base}`);
    }
    if (!resp.ok) throw new ApiUnavailableError(`areas request failed: ${resp.status}`);
    return (await resp.json()) as string[];
  }

  async compare(req: CompareRequest, signal?: AbortSignal): Promise<ComparisonPayload> {
    let resp: Response;
    try {
      resp = await fetch(`${this.base}/v1/compare`, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(req),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === 'AbortError') throw err;
      throw new ApiUnavailableError(`cannot reach ${this.base}`);
    }
    if (resp.status === 400) {
      const body = (await resp.json()) as ApiErrorBody;
      throw new ValidationError(body.detail ?? 'invalid request');
    }
    if (!resp.ok) {
      let body: ApiErrorBody | undefined;
      try {
        body = (await resp.json()) as ApiErrorBody;
      } catch {
        body = undefined;
      }
      throw new ApiUnavailableError(`comparison failed: ${resp.status}`, body);
    }
    return (await resp.json()) as ComparisonPayload;
  }
}
