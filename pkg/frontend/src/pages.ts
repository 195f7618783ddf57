import { el, clear, truncateMiddle, utcDateTime } from './dom.js';
import { renderDualAxisTrend, renderHistogram, type BrushHandler } from './charts.js';
import { renderBlockGlyph, renderCoinGlyph, renderConnector } from './glyphs.js';
import { renderCoinSankey } from './sankey.js';
import type { AddressPage, BlockPage, ChainPage, Paging, TxPage } from './types.js';

function section(cls: string, title?: string): HTMLElement {
  const box = el('section', { class: cls });
  if (title) box.appendChild(el('h2', {}, title));
  return box;
}

function verticalTable(pairs: [string, string][]): HTMLTableElement {
  const table = el('table', { class: 'essential-table' });
  for (const [name, value] of pairs) {
    const row = el('tr');
    row.appendChild(el('th', {}, name));
    row.appendChild(el('td', { class: 'mono' }, value));
    table.appendChild(row);
  }
  return table;
}

function pager(paging: Paging, onPage: (page: number) => void): HTMLElement {
  const nav = el('nav', { class: 'pager' });
  const prev = el('button', { class: 'pager-prev' }, '‹ prev');
  const next = el('button', { class: 'pager-next' }, 'next ›');
  if (paging.page <= 1) prev.setAttribute('disabled', '');
  if (paging.page >= paging.total_pages) next.setAttribute('disabled', '');
  prev.addEventListener('click', () => onPage(paging.page - 1));
  next.addEventListener('click', () => onPage(paging.page + 1));
  nav.appendChild(prev);
  nav.appendChild(
    el('span', { class: 'pager-info' }, `page ${paging.page} / ${Math.max(paging.total_pages, 1)} (${paging.total_rows} rows)`),
  );
  nav.appendChild(next);
  return nav;
}

// ---------------------------------------------------------------------
// blockchain page

export function renderChainPage(root: HTMLElement, payload: ChainPage): void {
  clear(root);
  const summary = payload.summary;
  root.appendChild(
    el(
      'p',
      { class: 'welcome' },
      `Silkchain holds ${summary.block_count} blocks, ${summary.tx_count} transactions, ` +
        `and ${summary.address_count} addresses. Explore any of them below or search above.`,
    ),
  );

  const ledger = section('ledger-row');
  const strip = el('div', { class: 'glyph-strip', role: 'list' });
  payload.glyphs.forEach((glyph, i) => {
    const link = el('a', { href: `#/block/${glyph.height}`, class: 'block-link', role: 'listitem' });
    link.appendChild(renderBlockGlyph(glyph));
    strip.appendChild(link);
    const weight = glyph.gap_weight_to_next;
    if (weight !== null && i < payload.glyphs.length - 1) {
      strip.appendChild(renderConnector(weight));
    }
  });
  ledger.appendChild(strip);
  root.appendChild(ledger);

  const trend = section('trend-area', 'Daily blocks and transactions, last 3 months');
  trend.appendChild(
    renderDualAxisTrend(
      payload.trend.points.map((p) => ({ label: p.date, bar: p.block_count, line: p.tx_count })),
      'blocks/day',
      'txs/day',
    ),
  );
  root.appendChild(trend);
}

// ---------------------------------------------------------------------
// block page

export interface BlockPageHooks {
  cycleSort(field: string): void;
  brush: BrushHandler;
  clearFilter(): void;
  setPage(page: number): void;
  filterLabel: string | null;
}

const TX_COLUMNS: [string, string][] = [
  ['TxHash', 'txhash'],
  ['In_addr', 'in_addr'],
  ['Out_addr', 'out_addr'],
  ['TxSize', 'tx_size'],
  ['TxFee', 'tx_fee'],
];

export function renderBlockPage(root: HTMLElement, payload: BlockPage, hooks: BlockPageHooks): void {
  clear(root);
  const e = payload.essential;

  const top = section('block-essential', `Block #${e.height}`);
  top.appendChild(
    verticalTable([
      ['hash', String(e.hash)],
      ['previous block', String(e.prev_hash)],
      ['height', String(e.height)],
      ['time', utcDateTime(Number(e.timestamp))],
      ['confirmations', String(e.confirmations)],
      ['size', `${e.size_bytes} B`],
      ['transactions', String(e.tx_count)],
      ['subsidy', `${e.subsidy_slu} SLU`],
      ['reward', `${e.reward_slu} SLU`],
    ]),
  );
  root.appendChild(top);

  const middle = section('block-visual');
  const stripRow = el('div', { class: 'coin-strip-row' });
  const badge = el('div', { class: 'block-badge' });
  badge.appendChild(el('span', { class: 'badge-count' }, String(payload.tx_count)));
  badge.appendChild(el('span', { class: 'badge-label' }, 'txs'));
  stripRow.appendChild(badge);
  const strip = el('div', { class: 'coin-strip' });
  for (const glyph of payload.glyphs) {
    const link = el('a', { href: `#/tx/${glyph.txid}`, class: 'coin-link', title: glyph.txid });
    const holder = el('span', { class: 'coin-holder' });
    const svgRoot = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    svgRoot.setAttribute('width', '64');
    svgRoot.setAttribute('height', '64');
    svgRoot.setAttribute('viewBox', '0 0 60 60');
    svgRoot.appendChild(renderCoinGlyph(glyph));
    holder.appendChild(svgRoot);
    link.appendChild(holder);
    strip.appendChild(link);
  }
  if (payload.ellipsis) {
    strip.appendChild(el('span', { class: 'strip-ellipsis' }, '…'));
  }
  stripRow.appendChild(strip);
  middle.appendChild(stripRow);

  const charts = el('div', { class: 'histogram-row' });
  charts.appendChild(renderHistogram('addresses per tx', payload.histograms.addr_count, hooks.brush));
  charts.appendChild(renderHistogram('tx size', payload.histograms.tx_size, hooks.brush));
  charts.appendChild(renderHistogram('tx fee', payload.histograms.tx_fee, hooks.brush));
  middle.appendChild(charts);

  if (hooks.filterLabel) {
    const note = el('p', { class: 'filter-note' }, `filtered: ${hooks.filterLabel} `);
    const off = el('button', { class: 'filter-clear' }, 'clear');
    off.addEventListener('click', () => hooks.clearFilter());
    note.appendChild(off);
    middle.appendChild(note);
  }
  root.appendChild(middle);

  const bottom = section('block-table', 'Transactions');
  const table = el('table', { class: 'tx-table' });
  const head = el('tr');
  for (const [label, field] of TX_COLUMNS) {
    const th = el('th', { class: 'sortable', 'data-field': field }, label);
    if (field === payload.sort_field) {
      th.classList.add(`sorted-${payload.order}`);
      th.textContent = `${label} ${payload.order === 'asc' ? '↑' : payload.order === 'desc' ? '↓' : '⚄'}`;
    }
    th.addEventListener('click', () => hooks.cycleSort(field));
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const row of payload.rows) {
    const tr = el('tr', { class: 'tx-row' });
    const cell = el('td', { class: 'mono' });
    const link = el('a', { href: `#/tx/${row.txid}` }, truncateMiddle(row.txid, 12));
    cell.appendChild(link);
    tr.appendChild(cell);
    tr.appendChild(el('td', {}, String(row.in_addr)));
    tr.appendChild(el('td', {}, String(row.out_addr)));
    tr.appendChild(el('td', {}, `${row.tx_size} B`));
    tr.appendChild(el('td', {}, `${row.tx_fee_slu} SLU`));
    table.appendChild(tr);
  }
  bottom.appendChild(table);
  bottom.appendChild(pager(payload.paging, hooks.setPage));
  root.appendChild(bottom);
}

// ---------------------------------------------------------------------
// transaction page

export function renderTxPage(root: HTMLElement, payload: TxPage): void {
  clear(root);
  const e = payload.essential;
  const top = section('tx-essential', 'Transaction');
  top.appendChild(
    verticalTable([
      ['txid', String(e.txid)],
      ['block', `#${e.block_height} (${truncateMiddle(String(e.block_hash), 10)})`],
      ['time', utcDateTime(Number(e.timestamp))],
      ['confirmations', String(e.confirmations)],
      ['coinbase', e.is_coinbase ? 'yes' : 'no'],
      ['size', `${e.size_bytes} B`],
      ['fee', `${e.fee_slu} SLU`],
      ['inputs', `${e.input_count} (${e.total_in_slu} SLU)`],
      ['outputs', `${e.output_count} (${e.total_out_slu} SLU)`],
    ]),
  );
  root.appendChild(top);

  const middle = section('tx-visual', 'Coin mixing');
  middle.appendChild(renderCoinSankey(payload.sankey));
  root.appendChild(middle);

  const bottom = section('tx-tables');
  for (const [title, rows, cls] of [
    ['Inputs', payload.input_rows, 'input-table'],
    ['Outputs', payload.output_rows, 'output-table'],
  ] as const) {
    const half = el('div', { class: `slot-table ${cls}` });
    half.appendChild(el('h3', {}, title));
    const table = el('table');
    const head = el('tr');
    head.appendChild(el('th', {}, 'address'));
    head.appendChild(el('th', {}, 'amount'));
    table.appendChild(head);
    for (const row of rows) {
      const tr = el('tr');
      const cell = el('td', { class: 'mono' });
      cell.appendChild(el('a', { href: `#/address/${row.address}` }, row.address));
      tr.appendChild(cell);
      tr.appendChild(el('td', {}, `${row.amount_slu} SLU`));
      table.appendChild(tr);
    }
    half.appendChild(table);
    bottom.appendChild(half);
  }
  root.appendChild(bottom);
}

// ---------------------------------------------------------------------
// address page

export function renderAddressPage(
  root: HTMLElement,
  payload: AddressPage,
  onPage: (page: number) => void,
): void {
  clear(root);
  const e = payload.essential;
  const top = section('address-essential', 'Address');
  top.appendChild(
    verticalTable([
      ['address', String(e.address)],
      ['balance', `${e.balance_slu} SLU`],
      ['received', `${e.total_received_slu} SLU`],
      ['sent', `${e.total_sent_slu} SLU`],
      ['transactions', String(e.tx_count)],
      ['first seen', `block #${e.first_seen_height}`],
      ['last seen', `block #${e.last_seen_height}`],
    ]),
  );
  root.appendChild(top);

  const middle = section('address-visual', 'Balance and participation, last 30 days');
  middle.appendChild(
    renderDualAxisTrend(
      payload.trends.points.map((p) => ({ label: p.date, bar: p.tx_count, line: p.balance })),
      'txs/day',
      'balance',
    ),
  );
  root.appendChild(middle);

  const bottom = section('address-table', 'Participating transactions');
  const table = el('table', { class: 'ref-table' });
  const head = el('tr');
  for (const name of ['tx', 'block', 'time', 'role', 'net change']) {
    head.appendChild(el('th', {}, name));
  }
  table.appendChild(head);
  for (const row of payload.rows) {
    const tr = el('tr');
    const cell = el('td', { class: 'mono' });
    cell.appendChild(el('a', { href: `#/tx/${row.txid}` }, truncateMiddle(row.txid, 12)));
    tr.appendChild(cell);
    tr.appendChild(el('td', {}, `#${row.height}`));
    tr.appendChild(el('td', {}, utcDateTime(row.timestamp)));
    tr.appendChild(el('td', {}, row.role));
    tr.appendChild(
      el('td', { class: row.net_delta >= 0 ? 'delta-pos' : 'delta-neg' }, `${row.net_delta_slu} SLU`),
    );
    table.appendChild(tr);
  }
  bottom.appendChild(table);
  bottom.appendChild(pager(payload.paging, onPage));
  root.appendChild(bottom);
}
