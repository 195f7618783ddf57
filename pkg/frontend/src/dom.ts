const SVG_NS = 'http://www.w3.org/2000/svg';

type Attrs = { [key: string]: string | number };

export function el<T extends keyof HTMLElementTagNameMap>(
  tag: T,
  attrs: Attrs = {},
  text?: string,
): HTMLElementTagNameMap[T] {
  const node = document.createElement(tag);
  for (const key in attrs) node.setAttribute(key, String(attrs[key]));
  if (text !== undefined) node.textContent = text;
  return node;
}

export function svg<T extends keyof SVGElementTagNameMap>(
  tag: T,
  attrs: Attrs = {},
): SVGElementTagNameMap[T] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const key in attrs) node.setAttribute(key, String(attrs[key]));
  return node;
}

export function svgText(content: string, attrs: Attrs = {}): SVGTextElement {
  const node = svg('text', attrs);
  node.textContent = content;
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function truncateMiddle(hashish: string, keep = 10): string {
  if (hashish.length <= keep * 2 + 1) return hashish;
  return `${hashish.slice(0, keep)}…${hashish.slice(-keep)}`;
}

export function utcDateTime(epochSeconds: number): string {
  return new Date(epochSeconds * 1000).toISOString().replace('T', ' ').slice(0, 19) + ' UTC';
}
