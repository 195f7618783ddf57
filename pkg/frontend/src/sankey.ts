import { el, svg, svgText, truncateMiddle } from './dom.js';
import { renderCoinGlyph, COIN_RADIUS } from './glyphs.js';
import { SKY } from './palette.js';
import type { SankeyNodeData, SankeyViewData } from './types.js';

export const NODE_R_MIN = 6;
export const NODE_R_MAX = 26;
export const RIBBON_MIN = 2;
export const RIBBON_MAX = 26;

const WIDTH = 780;
const ROW_H = 64;
const LEFT_X = 120;
const RIGHT_X = WIDTH - 120;

function nodeRadius(node: SankeyNodeData): number {
  return NODE_R_MIN + node.radius_fraction * (NODE_R_MAX - NODE_R_MIN);
}

function ribbonWidth(node: SankeyNodeData): number {
  return RIBBON_MIN + node.width_fraction * (RIBBON_MAX - RIBBON_MIN);
}

function ribbonPath(fromX: number, fromY: number, toX: number, toY: number): string {
  const midX = (fromX + toX) / 2;
  return `M ${fromX} ${fromY} C ${midX} ${fromY}, ${midX} ${toY}, ${toX} ${toY}`;
}

function renderNode(node: SankeyNodeData, cx: number, cy: number): SVGElement {
  const r = nodeRadius(node);
  const circle = svg('circle', {
    cx,
    cy,
    r,
    class: node.merged ? 'sankey-node merged' : 'sankey-node',
    'data-radius': node.radius_fraction,
    'data-amount': node.amount,
  });
  if (node.merged) {
    // compressed remainder: dotted outline, three dots, no link target
    circle.setAttribute('stroke-dasharray', '3 3');
    const group = svg('g', { class: 'sankey-merged', 'data-merged-count': node.merged_count ?? 0 });
    group.appendChild(circle);
    for (const dx of [-6, 0, 6]) {
      group.appendChild(svg('circle', { cx: cx + dx, cy, r: 1.8, class: 'merged-dot' }));
    }
    group.appendChild(
      svgText(`${node.merged_count} more`, { x: cx - 24, y: cy + r + 14, class: 'node-label' }),
    );
    return group;
  }
  const link = svg('a', { href: `#/address/${node.address}`, class: 'sankey-link' });
  link.appendChild(circle);
  link.appendChild(
    svgText(truncateMiddle(node.address ?? '', 6), { x: cx - 34, y: cy + r + 14, class: 'node-label mono' }),
  );
  return link;
}

/** Flow diagram around a center coin glyph: left circles are inputs,
 * right circles outputs; ribbon widths and circle radii render the
 * payload fractions as-is. Amounts are labeled next to each circle. */
export function renderCoinSankey(view: SankeyViewData): HTMLElement {
  const rows = Math.max(view.inputs.length, view.outputs.length, 1);
  const height = Math.max(rows * ROW_H + 40, 220);
  const centerY = height / 2;
  const root = svg('svg', {
    width: WIDTH,
    height,
    viewBox: `0 0 ${WIDTH} ${height}`,
    class: 'coin-sankey',
  });

  const yFor = (index: number, count: number): number =>
    count <= 1 ? centerY : 40 + index * ((height - 80) / (count - 1));

  view.inputs.forEach((node, i) => {
    const y = yFor(i, view.inputs.length);
    root.appendChild(
      svg('path', {
        d: ribbonPath(LEFT_X + nodeRadius(node), y, WIDTH / 2 - COIN_RADIUS, centerY),
        fill: 'none',
        stroke: SKY,
        'stroke-opacity': 0.45,
        'stroke-width': ribbonWidth(node),
        class: 'ribbon ribbon-in',
        'data-width': node.width_fraction,
      }),
    );
  });
  view.outputs.forEach((node, i) => {
    const y = yFor(i, view.outputs.length);
    root.appendChild(
      svg('path', {
        d: ribbonPath(WIDTH / 2 + COIN_RADIUS, centerY, RIGHT_X - nodeRadius(node), y),
        fill: 'none',
        stroke: SKY,
        'stroke-opacity': 0.45,
        'stroke-width': ribbonWidth(node),
        class: 'ribbon ribbon-out',
        'data-width': node.width_fraction,
      }),
    );
  });

  view.inputs.forEach((node, i) => {
    const y = yFor(i, view.inputs.length);
    root.appendChild(renderNode(node, LEFT_X, y));
    root.appendChild(
      svgText(`${node.amount_slu} SLU`, { x: LEFT_X - 96, y: y + 4, class: 'amount-label' }),
    );
  });
  view.outputs.forEach((node, i) => {
    const y = yFor(i, view.outputs.length);
    root.appendChild(renderNode(node, RIGHT_X, y));
    root.appendChild(
      svgText(`${node.amount_slu} SLU`, { x: RIGHT_X + 30, y: y + 4, class: 'amount-label' }),
    );
  });

  const coin = renderCoinGlyph(view.center);
  coin.setAttribute('transform', `translate(${WIDTH / 2 - COIN_RADIUS} ${centerY - COIN_RADIUS})`);
  root.appendChild(coin);

  const wrap = el('div', { class: 'sankey-wrap' });
  wrap.appendChild(root);
  const totals = el(
    'p',
    { class: 'sankey-totals' },
    `in ${view.input_total_slu} SLU → out ${view.output_total_slu} SLU`,
  );
  wrap.appendChild(totals);
  return wrap;
}
