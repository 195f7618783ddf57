import { svg, svgText } from './dom.js';
import { NAVY, SKY } from './palette.js';
import type { HistogramData } from './types.js';

const TREND_W = 780;
const TREND_H = 220;
const PAD = { left: 46, right: 52, top: 14, bottom: 30 };

export interface DualPoint {
  label: string;
  bar: number; // left axis
  line: number; // right axis
}

/** Compounded bar/line chart with two y-axes: bars against the left
 * axis, the line against the right one. */
export function renderDualAxisTrend(
  points: DualPoint[],
  barName: string,
  lineName: string,
): SVGSVGElement {
  const root = svg('svg', {
    width: TREND_W,
    height: TREND_H,
    viewBox: `0 0 ${TREND_W} ${TREND_H}`,
    class: 'trend-chart',
  });
  const plotW = TREND_W - PAD.left - PAD.right;
  const plotH = TREND_H - PAD.top - PAD.bottom;
  const barMax = Math.max(1, ...points.map((p) => p.bar));
  const lineMax = Math.max(1, ...points.map((p) => p.line));
  const step = plotW / Math.max(1, points.length);

  root.appendChild(
    svg('line', {
      x1: PAD.left,
      y1: PAD.top + plotH,
      x2: PAD.left + plotW,
      y2: PAD.top + plotH,
      class: 'axis',
    }),
  );
  root.appendChild(svgText(String(barMax), { x: 4, y: PAD.top + 10, class: 'axis-label left' }));
  root.appendChild(
    svgText(String(lineMax), { x: TREND_W - PAD.right + 6, y: PAD.top + 10, class: 'axis-label right' }),
  );
  root.appendChild(svgText(barName, { x: 4, y: TREND_H - 6, class: 'legend-bar' }));
  root.appendChild(svgText(lineName, { x: TREND_W - PAD.right - 60, y: TREND_H - 6, class: 'legend-line' }));

  points.forEach((point, i) => {
    const h = (point.bar / barMax) * plotH;
    root.appendChild(
      svg('rect', {
        x: PAD.left + i * step + step * 0.15,
        y: PAD.top + plotH - h,
        width: Math.max(1, step * 0.7),
        height: h,
        fill: NAVY,
        class: 'trend-bar',
        'data-date': point.label,
        'data-value': point.bar,
      }),
    );
  });

  const lineCoords = points
    .map((point, i) => {
      const x = PAD.left + i * step + step / 2;
      const y = PAD.top + plotH - (point.line / lineMax) * plotH;
      return `${x},${y}`;
    })
    .join(' ');
  root.appendChild(
    svg('polyline', {
      points: lineCoords,
      fill: 'none',
      stroke: SKY,
      'stroke-width': 2,
      class: 'trend-line',
    }),
  );

  // sparse date labels: first, middle, last
  const picks = [0, Math.floor(points.length / 2), points.length - 1];
  for (const i of new Set(picks)) {
    if (points[i]) {
      root.appendChild(
        svgText(points[i].label, {
          x: PAD.left + i * step,
          y: TREND_H - PAD.bottom + 16,
          class: 'tick-label',
        }),
      );
    }
  }
  return root;
}

const HIST_W = 236;
const HIST_H = 150;
const HIST_PAD = { left: 10, right: 10, top: 10, bottom: 26 };

export type BrushHandler = (field: string, min: number, max: number) => void;

/** Bar-chart histogram with an x-axis brush. Dragging a range converts
 * the pixel span back through the payload's min/max to raw field values
 * and hands them to the brush handler. */
export function renderHistogram(
  title: string,
  hist: HistogramData,
  onBrush: BrushHandler,
): SVGSVGElement {
  const root = svg('svg', {
    width: HIST_W,
    height: HIST_H,
    viewBox: `0 0 ${HIST_W} ${HIST_H}`,
    class: 'histogram',
    'data-field': hist.field,
  });
  root.appendChild(svgText(title, { x: HIST_PAD.left, y: HIST_H - 6, class: 'hist-title' }));

  if (hist.counts.length === 0 || hist.min_value === null || hist.max_value === null) {
    root.appendChild(svgText('no transactions', { x: HIST_PAD.left, y: HIST_H / 2, class: 'hist-empty' }));
    return root;
  }

  const plotW = HIST_W - HIST_PAD.left - HIST_PAD.right;
  const plotH = HIST_H - HIST_PAD.top - HIST_PAD.bottom;
  const peak = Math.max(1, ...hist.counts);
  const step = plotW / hist.counts.length;
  hist.counts.forEach((count, i) => {
    const h = (count / peak) * plotH;
    root.appendChild(
      svg('rect', {
        x: HIST_PAD.left + i * step + 1,
        y: HIST_PAD.top + plotH - h,
        width: Math.max(1, step - 2),
        height: h,
        class: 'hist-bar',
        'data-count': count,
      }),
    );
  });

  const lo = hist.min_value;
  const hi = hist.max_value;
  const pxToValue = (px: number): number => {
    const frac = Math.min(Math.max((px - HIST_PAD.left) / plotW, 0), 1);
    return lo + frac * (hi - lo);
  };

  const overlay = svg('rect', {
    x: HIST_PAD.left,
    y: HIST_PAD.top,
    width: plotW,
    height: plotH,
    fill: 'transparent',
    class: 'brush-overlay',
  });
  const selection = svg('rect', {
    y: HIST_PAD.top,
    height: plotH,
    class: 'brush-selection',
    width: 0,
    x: 0,
  });
  root.appendChild(selection);
  root.appendChild(overlay);

  let anchor: number | null = null;
  const localX = (event: MouseEvent): number => {
    const rect = root.getBoundingClientRect();
    return event.clientX - rect.left;
  };
  overlay.addEventListener('mousedown', (event) => {
    anchor = localX(event as MouseEvent);
    selection.setAttribute('x', String(anchor));
    selection.setAttribute('width', '0');
  });
  overlay.addEventListener('mousemove', (event) => {
    if (anchor === null) return;
    const x = localX(event as MouseEvent);
    selection.setAttribute('x', String(Math.min(anchor, x)));
    selection.setAttribute('width', String(Math.abs(x - anchor)));
  });
  overlay.addEventListener('mouseup', (event) => {
    if (anchor === null) return;
    const x = localX(event as MouseEvent);
    const start = Math.min(anchor, x);
    const end = Math.max(anchor, x);
    anchor = null;
    if (end - start < 3) return; // a click, not a brush
    onBrush(hist.field, Math.floor(pxToValue(start)), Math.ceil(pxToValue(end)));
  });
  return root;
}
