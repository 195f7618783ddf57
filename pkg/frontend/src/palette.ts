// Interface colors: navy blue frames, sky blue actionable elements,
// aged-paper yellow for ledger/coin bodies. Exact values are a UI
// choice, not part of the API contract.

export const NAVY = '#1b2a4a';
export const SKY = '#3da9e0';
export const INK = '#2b2217';

// aged paper, light to dark: index = confirmation intensity level 1..6
export const PAPER_LEVELS = [
  '#f7eccd',
  '#efdfae',
  '#e5cf8e',
  '#d9bd70',
  '#c9a854',
  '#b6913c',
];

// bronze coin body, pale to dark: index = fee intensity level 1..5
export const BRONZE_LEVELS = ['#e8d9a8', '#d9c184', '#c7a75f', '#b18c41', '#936f2a'];

export function paperFill(intensityLevel: number): string {
  return PAPER_LEVELS[Math.min(Math.max(intensityLevel, 1), 6) - 1];
}

export function bronzeFill(feeLevel: number): string {
  return BRONZE_LEVELS[Math.min(Math.max(feeLevel, 1), 5) - 1];
}

// connector length buckets, for quick visual scanning and for tests
export function gapClass(weight: number): string {
  if (weight < 0.4) return 'gap-short';
  if (weight > 1.1) return 'gap-long';
  return 'gap-normal';
}
