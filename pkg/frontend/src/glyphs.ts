import { svg, svgText, truncateMiddle, utcDateTime } from './dom.js';
import { bronzeFill, gapClass, paperFill, INK, SKY } from './palette.js';
import type { BlockGlyphData, CoinGlyphData } from './types.js';

export const BLOCK_GLYPH_W = 168;
export const BLOCK_GLYPH_H = 190;

export const COIN_RADIUS = 30;
export const RING_WIDTH = 7;
export const EYE_MIN = 7;
export const EYE_MAX = 21;

// connector baseline: a weight of 1.0 (twice the median gap) spans this
export const GAP_BASE_PX = 56;

function polar(cx: number, cy: number, r: number, angleDeg: number): [number, number] {
  const rad = ((angleDeg - 90) * Math.PI) / 180; // 0 deg = 12 o'clock
  return [cx + r * Math.cos(rad), cy + r * Math.sin(rad)];
}

function ringArc(
  cx: number,
  cy: number,
  r: number,
  sweepDeg: number,
  side: 'left' | 'right',
): string {
  // both rings start at 12 o'clock and sweep toward 6 o'clock
  const clamped = Math.min(sweepDeg, 179.999);
  const sign = side === 'right' ? 1 : -1;
  const [x0, y0] = polar(cx, cy, r, 0);
  const [x1, y1] = polar(cx, cy, r, sign * clamped);
  const large = clamped > 180 ? 1 : 0;
  const sweepFlag = side === 'right' ? 1 : 0;
  return `M ${x0} ${y0} A ${r} ${r} 0 ${large} ${sweepFlag} ${x1} ${y1}`;
}

/** Copper-coin transaction mark: ring fills = input/output counts, eye
 * size = relative size, body shade = fee level. All magnitudes come
 * straight from the payload. */
export function renderCoinGlyph(data: CoinGlyphData): SVGGElement {
  const g = svg('g', { class: 'coin-glyph', 'data-txid': data.txid });
  const c = COIN_RADIUS;
  const ringR = c - RING_WIDTH / 2;

  g.appendChild(
    svg('circle', {
      cx: c,
      cy: c,
      r: c - RING_WIDTH,
      fill: bronzeFill(data.body_intensity_level),
      class: `coin-body fee-level-${data.body_intensity_level}`,
      'data-fee-level': data.body_intensity_level,
    }),
  );
  g.appendChild(
    svg('circle', {
      cx: c,
      cy: c,
      r: ringR,
      fill: 'none',
      stroke: '#d8cba4',
      'stroke-width': RING_WIDTH,
      class: 'coin-wheel',
    }),
  );

  for (const side of ['left', 'right'] as const) {
    const fill = side === 'left' ? data.left_ring_fill : data.right_ring_fill;
    const sweep = fill * 180;
    if (fill > 0) {
      g.appendChild(
        svg('path', {
          d: ringArc(c, c, ringR, sweep, side),
          fill: 'none',
          stroke: SKY,
          'stroke-width': RING_WIDTH,
          class: `coin-ring coin-ring-${side}`,
          'data-side': side,
          'data-fill': fill,
          'data-sweep': sweep,
        }),
      );
    }
  }

  const eye = EYE_MIN + data.eye_radius_fraction * (EYE_MAX - EYE_MIN);
  g.appendChild(
    svg('rect', {
      x: c - eye / 2,
      y: c - eye / 2,
      width: eye,
      height: eye,
      fill: '#fbf6e3',
      stroke: INK,
      'stroke-width': 1,
      class: 'coin-eye',
      'data-eye': data.eye_radius_fraction,
    }),
  );
  g.appendChild(svgText('T', { x: c - eye / 2 - 7, y: c + 4, class: 'coin-letter' }));
  g.appendChild(svgText('X', { x: c + eye / 2 + 2, y: c + 4, class: 'coin-letter' }));
  return g;
}

/** Aged-paper-ledger block mark: header boxes, hash texts, three filled
 * ribbon bands; darkness encodes the confirmation level. */
export function renderBlockGlyph(data: BlockGlyphData): SVGSVGElement {
  const root = svg('svg', {
    width: BLOCK_GLYPH_W,
    height: BLOCK_GLYPH_H,
    viewBox: `0 0 ${BLOCK_GLYPH_W} ${BLOCK_GLYPH_H}`,
    class: `block-glyph intensity-${data.intensity_level}`,
    'data-height': data.height,
    'data-intensity': data.intensity_level,
    'data-confirmations': data.confirmations,
  });
  const w = BLOCK_GLYPH_W;

  root.appendChild(
    svg('rect', {
      x: 1,
      y: 1,
      width: w - 2,
      height: BLOCK_GLYPH_H - 2,
      rx: 4,
      fill: paperFill(data.intensity_level),
      stroke: INK,
      class: 'ledger-paper',
    }),
  );

  // header boxes: sequence number and current confirmation count
  root.appendChild(svg('rect', { x: 8, y: 8, width: 72, height: 22, class: 'glyph-box' }));
  root.appendChild(svgText(`#${data.height}`, { x: 14, y: 24, class: 'glyph-box-text' }));
  root.appendChild(svg('rect', { x: w - 80, y: 8, width: 72, height: 22, class: 'glyph-box' }));
  root.appendChild(
    svgText(`conf ${data.confirmations}`, { x: w - 74, y: 24, class: 'glyph-box-text' }),
  );

  root.appendChild(svgText(utcDateTime(data.timestamp), { x: 8, y: 48, class: 'glyph-meta' }));
  root.appendChild(
    svgText(`hash ${truncateMiddle(data.hash, 7)}`, { x: 8, y: 64, class: 'glyph-meta mono' }),
  );
  root.appendChild(
    svgText(`prev ${truncateMiddle(data.prev_hash, 7)}`, { x: 8, y: 80, class: 'glyph-meta mono' }),
  );

  data.bands.forEach((band, i) => {
    const y = 96 + i * 30;
    root.appendChild(
      svg('rect', { x: 8, y, width: w - 16, height: 24, class: 'band-frame' }),
    );
    root.appendChild(
      svg('rect', {
        x: 8,
        y,
        width: (w - 16) * band.fill_fraction,
        height: 24,
        class: `band-fill band-${band.label}`,
        'data-band': band.label,
        'data-fill': band.fill_fraction,
      }),
    );
    root.appendChild(
      svgText(`${band.label}: ${band.display}`, { x: 12, y: y + 16, class: 'band-text' }),
    );
  });
  return root;
}

/** Dotted string between two ledgers; the arrow points left (every block
 * hangs off its predecessor) and the length scales with the time gap. */
export function renderConnector(gapWeight: number): SVGSVGElement {
  const length = Math.max(16, GAP_BASE_PX * gapWeight);
  const root = svg('svg', {
    width: length,
    height: 24,
    class: `connector ${gapClass(gapWeight)}`,
    'data-gap-weight': gapWeight,
  });
  root.appendChild(
    svg('line', {
      x1: 10,
      y1: 12,
      x2: length,
      y2: 12,
      stroke: INK,
      'stroke-width': 1.6,
      'stroke-dasharray': '4 4',
    }),
  );
  root.appendChild(svg('path', { d: 'M 10 12 l 8 -5 v 10 z', fill: INK, class: 'arrowhead' }));
  return root;
}
