/** Pure DOM rendering for the comparison view.
 *
 * Every number shown comes verbatim from the API payload; the only
 * formatting applied is toFixed(2) on the savings percentage. Row order is
 * the payload's quote order, never re-sorted here. Badges render only for
 * the providers the API designated.
 */

import type { ComparisonPayload, ProviderName, QuoteRow } from './types.js';

const BADGES: ReadonlyArray<[keyof ComparisonPayload, string]> = [
  ['cheapest', 'CHEAPEST'],
  ['fastest', 'FASTEST'],
  ['best', 'BEST'],
];

function badgesFor(payload: ComparisonPayload, provider: ProviderName): string[] {
  return BADGES.filter(([field]) => payload[field] === provider).map(([, label]) => label);
}

function cell(row: HTMLTableRowElement, text: string, className?: string): HTMLTableCellElement {
  const td = row.ownerDocument.createElement('td');
  td.textContent = text;
  if (className) td.className = className;
  row.appendChild(td);
  return td;
}

function quoteRow(doc: Document, payload: ComparisonPayload, quote: QuoteRow): HTMLTableRowElement {
  const tr = doc.createElement('tr');
  tr.className = 'quote-row';
  tr.dataset.provider = quote.provider;
  cell(tr, quote.provider, 'provider');
  cell(tr, String(quote.fare_rupees), 'fare');
  cell(tr, String(quote.eta_min), 'eta');
  cell(tr, String(quote.distance_km), 'distance');
  const badgeCell = cell(tr, '', 'badges');
  for (const label of badgesFor(payload, quote.provider)) {
    const span = doc.createElement('span');
    span.className = `badge badge-${label.toLowerCase()}`;
    span.textContent = label;
    badgeCell.appendChild(span);
  }
  return tr;
}

export function renderComparison(container: HTMLElement, payload: ComparisonPayload): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  if (payload.savings_pct !== undefined) {
    const banner = doc.createElement('p');
    banner.className = 'savings-banner';
    banner.textContent = `You save ${payload.savings_pct.toFixed(2)}% by choosing ${payload.cheapest}`;
    container.appendChild(banner);
  }

  const table = doc.createElement('table');
  table.className = 'comparison';
  const head = doc.createElement('tr');
  for (const title of ['Provider', 'Fare (₹)', 'ETA (min)', 'Distance (km)', '']) {
    const th = doc.createElement('th');
    th.textContent = title;
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const quote of payload.quotes) {
    table.appendChild(quoteRow(doc, payload, quote));
  }
  for (const failure of payload.failures) {
    const tr = doc.createElement('tr');
    tr.className = 'failure-row';
    tr.dataset.provider = failure.provider;
    cell(tr, failure.provider, 'provider');
    const note = cell(tr, failure.kind, 'failure-kind');
    note.colSpan = 3;
    note.title = failure.detail;
    cell(tr, '', 'badges');
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export function renderAreaOptions(select: HTMLSelectElement, areas: string[]): void {
  const doc = select.ownerDocument;
  select.replaceChildren();
  for (const name of areas) {
    const option = doc.createElement('option');
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }
  select.disabled = areas.length === 0;
}

export type NoticeKind = 'info' | 'error';

export function renderNotice(container: HTMLElement, kind: NoticeKind, message: string, onRetry?: () => void): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const p = doc.createElement('p');
  p.className = `notice notice-${kind}`;
  p.textContent = message;
  container.appendChild(p);
  if (onRetry) {
    const button = doc.createElement('button');
    button.type = 'button';
    button.className = 'retry';
    button.textContent = 'Retry';
    button.addEventListener('click', onRetry);
    container.appendChild(button);
  }
}

export function clearNotice(container: HTMLElement): void {
  container.replaceChildren();
}
