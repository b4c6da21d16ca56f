/** Form wiring: area pickers fed from the API, client-side pickup!=drop
 * check, one in-flight comparison at a time (a new submit aborts the old
 * one), retry affordance that reuses the untouched form state. */

import { ApiUnavailableError, FareApi, ValidationError, apiBaseUrl } from './api.js';
import { clearNotice, renderAreaOptions, renderComparison, renderNotice } from './render.js';
import type { CompareRequest } from './types.js';

function nowLocalMinute(): string {
  const now = new Date();
  now.setSeconds(0, 0);
  const pad = (n: number) => String(n).padStart(2, '0');
  return `${now.getFullYear()}-${pad(now.getMonth() + 1)}-${pad(now.getDate())}T${pad(now.getHours())}:${pad(now.getMinutes())}`;
}

export function setupApp(doc: Document, api: FareApi): void {
  const form = doc.querySelector<HTMLFormElement>('#compare-form')!;
  const pickup = doc.querySelector<HTMLSelectElement>('#pickup')!;
  const drop = doc.querySelector<HTMLSelectElement>('#drop')!;
  const passengers = doc.querySelector<HTMLInputElement>('#passengers')!;
  const departure = doc.querySelector<HTMLInputElement>('#departure')!;
  const traffic = doc.querySelector<HTMLSelectElement>('#traffic')!;
  const notice = doc.querySelector<HTMLElement>('#notice')!;
  const results = doc.querySelector<HTMLElement>('#results')!;

  departure.value = nowLocalMinute();

  let inflight: AbortController | null = null;

  async function loadAreas(): Promise<void> {
    try {
      const areas = await api.getAreas();
      renderAreaOptions(pickup, areas);
      renderAreaOptions(drop, areas);
      if (areas.length === 0) {
        renderNotice(notice, 'error', 'No areas available; the service has an empty registry.');
        return;
      }
      if (areas.length > 1) drop.selectedIndex = 1;
      clearNotice(notice);
    } catch {
      renderNotice(notice, 'error', 'Could not load areas from the API.', () => void loadAreas());
    }
  }

  function formRequest(): CompareRequest {
    return {
      pickup: pickup.value,
      drop: drop.value,
      passengers: Number(passengers.value),
      departure: departure.value,
      traffic: traffic.value as CompareRequest['traffic'],
    };
  }

  async function submit(): Promise<void> {
    const req = formRequest();
    if (req.pickup.trim().toLowerCase() === req.drop.trim().toLowerCase()) {
      renderNotice(notice, 'error', 'Pickup and drop must differ.');
      return;
    }
    inflight?.abort();
    const controller = new AbortController();
    inflight = controller;
    renderNotice(notice, 'info', 'Comparing fares…');
    try {
      const payload = await api.compare(req, controller.signal);
      if (controller.signal.aborted) return;
      clearNotice(notice);
      renderComparison(results, payload);
    } catch (err) {
      if (controller.signal.aborted) return;
      if (err instanceof ValidationError) {
        renderNotice(notice, 'error', err.detail);
      } else if (err instanceof ApiUnavailableError) {
        renderNotice(notice, 'error', `Comparison failed: ${err.message}`, () => void submit());
      } else {
        throw err;
      }
    } finally {
      if (inflight === controller) inflight = null;
    }
  }

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submit();
  });

  void loadAreas();
}

// browser entry point; tests import the pieces directly
if (typeof document !== 'undefined' && document.querySelector('#compare-form')) {
  setupApp(document, new FareApi(apiBaseUrl()));
}
