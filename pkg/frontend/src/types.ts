// Payload shapes served by the backend API. The UI renders these as-is:
// every magnitude it draws is a fraction, level, or count computed
// server-side.

export interface Band {
  label: string;
  value: number;
  display: string;
  fill_fraction: number;
}

export interface BlockGlyphData {
  height: number;
  confirmations: number;
  intensity_level: number; // 1..6
  timestamp: number;
  hash: string;
  prev_hash: string;
  bands: Band[];
  gap_weight_to_next: number | null;
}

export interface CoinGlyphData {
  txid: string;
  left_ring_fill: number;
  right_ring_fill: number;
  eye_radius_fraction: number;
  body_intensity_level: number; // 1..5
}

export interface SankeyNodeData {
  address: string | null;
  amount: number;
  amount_slu: string;
  radius_fraction: number;
  width_fraction: number;
  merged: boolean;
  merged_count: number | null;
}

export interface SankeyViewData {
  inputs: SankeyNodeData[];
  outputs: SankeyNodeData[];
  input_total: number;
  input_total_slu: string;
  output_total: number;
  output_total_slu: string;
  center: CoinGlyphData;
}

export interface TrendPoint {
  date: string;
  block_count: number;
  tx_count: number;
}

export interface ChainPage {
  summary: {
    block_count: number;
    tx_count: number;
    address_count: number;
    tip_height: number;
    tip_hash: string | null;
  };
  glyphs: BlockGlyphData[];
  trend: { start_day: string; points: TrendPoint[] };
  tip_height: number;
}

export interface HistogramData {
  field: string;
  bin_edges: number[];
  counts: number[];
  min_value: number | null;
  max_value: number | null;
}

export interface Paging {
  page: number;
  per_page: number;
  total_rows: number;
  total_pages: number;
}

export interface TxRow {
  txid: string;
  in_addr: number;
  out_addr: number;
  tx_size: number;
  tx_fee: number;
  tx_fee_slu: string;
}

export interface BlockPage {
  essential: Record<string, string | number | boolean>;
  tx_count: number;
  glyphs: CoinGlyphData[];
  ellipsis: boolean;
  histograms: { addr_count: HistogramData; tx_size: HistogramData; tx_fee: HistogramData };
  rows: TxRow[];
  paging: Paging;
  sort_field: string;
  order: string;
  tip_height: number;
}

export interface SlotRow {
  address: string;
  amount: number;
  amount_slu: string;
}

export interface TxPage {
  essential: Record<string, string | number | boolean>;
  sankey: SankeyViewData;
  input_rows: SlotRow[];
  input_paging: Paging;
  output_rows: SlotRow[];
  output_paging: Paging;
  tip_height: number;
}

export interface AddressTrendPoint {
  date: string;
  balance: number;
  tx_count: number;
}

export interface RefRow {
  txid: string;
  height: number;
  timestamp: number;
  role: string;
  net_delta: number;
  net_delta_slu: string;
}

export interface AddressPage {
  essential: Record<string, string | number | boolean>;
  trends: { points: AddressTrendPoint[] };
  rows: RefRow[];
  paging: Paging;
  tip_height: number;
}

export interface QueryResolution {
  kind: 'block' | 'transaction' | 'address' | 'not_found' | 'ambiguous_format';
  canonical_key: string;
  redirect_path: string;
  tip_height: number;
}

export interface BlockQuery {
  sort: string;
  order: 'asc' | 'desc' | 'random';
  shuffleSeed?: number;
  filterField?: string;
  min?: number;
  max?: number;
  page: number;
  perPage: number;
}
