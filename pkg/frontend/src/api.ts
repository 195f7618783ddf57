import type {
  AddressPage,
  BlockPage,
  BlockQuery,
  ChainPage,
  QueryResolution,
  TxPage,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      if (body && body.error) detail = body.error;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function blockQueryParams(query: BlockQuery): string {
  const params = new URLSearchParams();
  params.set('sort', query.sort);
  params.set('order', query.order);
  if (query.order === 'random') params.set('shuffle_seed', String(query.shuffleSeed ?? 0));
  if (query.filterField !== undefined) {
    params.set('filter_field', query.filterField);
    if (query.min !== undefined) params.set('min', String(query.min));
    if (query.max !== undefined) params.set('max', String(query.max));
  }
  params.set('page', String(query.page));
  params.set('per_page', String(query.perPage));
  return params.toString();
}

export class ApiClient {
  constructor(public base: string = '') {}

  chain(): Promise<ChainPage> {
    return getJson(`${this.base}/api/chain`);
  }

  block(key: string, query: BlockQuery): Promise<BlockPage> {
    return getJson(`${this.base}/api/block/${key}?${blockQueryParams(query)}`);
  }

  tx(txid: string): Promise<TxPage> {
    return getJson(`${this.base}/api/tx/${txid}`);
  }

  address(address: string, page = 1, perPage = 20): Promise<AddressPage> {
    return getJson(`${this.base}/api/address/${address}?page=${page}&per_page=${perPage}`);
  }

  search(query: string): Promise<QueryResolution> {
    return getJson(`${this.base}/api/search?q=${encodeURIComponent(query)}`);
  }
}

// "/api/block/42" -> "#/block/42" etc.; empty for non-navigable results
export function redirectToRoute(redirectPath: string): string {
  const match = redirectPath.match(/^\/api\/(block|tx|address)\/(.+)$/);
  return match ? `#/${match[1]}/${match[2]}` : '';
}
