import { ApiClient, ApiError, redirectToRoute } from './api.js';
import { el, clear } from './dom.js';
import {
  renderAddressPage,
  renderBlockPage,
  renderChainPage,
  type BlockPageHooks,
} from './pages.js';
import { renderTxPage } from './pages.js';
import type { BlockQuery } from './types.js';

const SORT_CYCLE = ['asc', 'desc', 'random'] as const;

export interface AppOptions {
  pollMs?: number; // chain page refresh cadence; 0 disables
  seedSource?: () => number; // shuffle seeds for random order
}

interface BlockViewState extends BlockQuery {
  key: string;
}

/** Single-page shell: parses #/ routes, fetches payloads, renders pages,
 * and owns the block page's sort/brush/paging state. */
export class App {
  readonly api: ApiClient;
  private banner: HTMLElement;
  private main: HTMLElement;
  private searchInput: HTMLInputElement;
  private pollMs: number;
  private seedSource: () => number;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private lastTip = -1;
  private blockState: BlockViewState | null = null;
  private addressPageNo = 1;

  constructor(root: HTMLElement, apiBase = '', options: AppOptions = {}) {
    this.api = new ApiClient(apiBase);
    this.pollMs = options.pollMs ?? 10000;
    this.seedSource = options.seedSource ?? (() => Date.now() % 1_000_000);

    clear(root);
    const header = el('header', { class: 'site-header' });
    const title = el('a', { href: '#/', class: 'site-title' }, 'Silkchain Explorer');
    header.appendChild(title);
    const form = el('form', { class: 'search-form' });
    this.searchInput = el('input', {
      type: 'search',
      class: 'search-input',
      placeholder: 'block height, block hash, txid, or address',
    });
    form.appendChild(this.searchInput);
    form.appendChild(el('button', { type: 'submit', class: 'search-button' }, 'search'));
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.search(this.searchInput.value);
    });
    header.appendChild(form);
    root.appendChild(header);

    this.banner = el('div', { class: 'banner hidden', role: 'alert' });
    root.appendChild(this.banner);
    this.main = el('main', { class: 'page' });
    root.appendChild(this.main);
  }

  start(): void {
    window.addEventListener('hashchange', () => void this.show(currentRoute()));
    void this.show(currentRoute());
  }

  /** Resolve a query through the backend and follow its redirect. */
  async search(query: string): Promise<void> {
    this.clearBanner();
    try {
      const resolution = await this.api.search(query);
      if (resolution.kind === 'not_found') {
        this.showBanner(`nothing on the chain matches "${resolution.canonical_key}"`);
        return;
      }
      if (resolution.kind === 'ambiguous_format') {
        this.showBanner('not a height, hash, txid, or address');
        return;
      }
      await this.navigate(redirectToRoute(resolution.redirect_path));
    } catch (error) {
      this.showBanner(describe(error));
    }
  }

  /** Set the location hash and render the route. */
  async navigate(route: string): Promise<void> {
    window.location.hash = route.startsWith('#') ? route : `#${route}`;
    await this.show(currentRoute());
  }

  /** Fetch and render one route: "/", "/block/:id", "/tx/:id",
   * "/address/:id". */
  async show(route: string): Promise<void> {
    this.clearBanner();
    this.stopPolling();
    const [, kind, key] = route.match(/^\/(block|tx|address)\/(.+)$/) ?? [null, '', ''];
    try {
      if (kind === 'block') {
        if (!this.blockState || this.blockState.key !== key) {
          this.blockState = { key, sort: 'tx_fee', order: 'desc', page: 1, perPage: 20 };
        }
        await this.renderBlock();
      } else if (kind === 'tx') {
        renderTxPage(this.main, await this.api.tx(key));
      } else if (kind === 'address') {
        this.addressPageNo = 1;
        await this.renderAddress(key);
      } else {
        await this.renderChain();
        this.startPolling();
      }
    } catch (error) {
      this.showBanner(describe(error));
    }
  }

  private async renderChain(): Promise<void> {
    const payload = await this.api.chain();
    if (payload.tip_height < this.lastTip) return; // stale response
    this.lastTip = payload.tip_height;
    renderChainPage(this.main, payload);
  }

  private async renderBlock(): Promise<void> {
    const state = this.blockState!;
    const payload = await this.api.block(state.key, state);
    const hooks: BlockPageHooks = {
      cycleSort: (field) => {
        if (state.sort === field) {
          const next = SORT_CYCLE[(SORT_CYCLE.indexOf(state.order) + 1) % SORT_CYCLE.length];
          state.order = next;
        } else {
          state.sort = field;
          state.order = 'asc';
        }
        if (state.order === 'random') state.shuffleSeed = this.seedSource();
        state.page = 1;
        void this.renderBlock().catch((error) => this.showBanner(describe(error)));
      },
      brush: (field, min, max) => {
        state.filterField = field;
        state.min = min;
        state.max = max;
        state.page = 1;
        void this.renderBlock().catch((error) => this.showBanner(describe(error)));
      },
      clearFilter: () => {
        delete state.filterField;
        delete state.min;
        delete state.max;
        state.page = 1;
        void this.renderBlock().catch((error) => this.showBanner(describe(error)));
      },
      setPage: (page) => {
        state.page = page;
        void this.renderBlock().catch((error) => this.showBanner(describe(error)));
      },
      filterLabel: state.filterField
        ? `${state.filterField} ∈ [${state.min}, ${state.max}]`
        : null,
    };
    renderBlockPage(this.main, payload, hooks);
  }

  private async renderAddress(address: string): Promise<void> {
    const payload = await this.api.address(address, this.addressPageNo);
    renderAddressPage(this.main, payload, (page) => {
      this.addressPageNo = page;
      void this.renderAddress(address).catch((error) => this.showBanner(describe(error)));
    });
  }

  private startPolling(): void {
    if (this.pollMs > 0 && this.pollTimer === null) {
      this.pollTimer = setInterval(() => {
        void this.renderChain().catch(() => undefined); // keep last good view
      }, this.pollMs);
    }
  }

  private stopPolling(): void {
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }

  showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.classList.remove('hidden');
  }

  clearBanner(): void {
    this.banner.textContent = '';
    this.banner.classList.add('hidden');
  }
}

function currentRoute(): string {
  const hash = window.location.hash;
  return hash.startsWith('#') ? hash.slice(1) || '/' : '/';
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `request failed: ${error.message}`;
  return `request failed: ${String(error)}`;
}

export function mount(root: HTMLElement, apiBase = '', options: AppOptions = {}): App {
  const app = new App(root, apiBase, options);
  app.start();
  return app;
}
