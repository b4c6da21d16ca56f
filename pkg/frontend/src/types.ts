/** Wire types for the comparison API. Field names mirror the JSON exactly. */

export type ProviderName = 'ola' | 'uber' | 'rapido';

export type FailureKind = 'timeout' | 'unavailable' | 'bad_request' | 'internal';

export interface QuoteRow {
  provider: ProviderName;
  fare_rupees: number;
  eta_min: number;
  distance_km: number;
}

export interface FailureRow {
  provider: ProviderName;
  kind: FailureKind;
  detail: string;
}

export interface ComparisonPayload {
  quotes: QuoteRow[];
  failures: FailureRow[];
  cheapest?: ProviderName;
  fastest?: ProviderName;
  best?: ProviderName;
  savings_pct?: number;
}

export interface CompareRequest {
  pickup: string;
  drop: string;
  passengers: number;
  departure: string; // ISO 8601, minute precision
  traffic: 'low' | 'medium' | 'high';
}

export interface ApiErrorBody {
  error: string;
  detail?: string;
  failures?: FailureRow[];
}
