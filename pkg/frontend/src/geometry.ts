/** Board geometry: three concentric octagons plus a center, angle 1 at the
 * top, angles increasing clockwise. Pure presentation constants; all rules
 * stay server-side. */

import type { RegionName } from './types.js';

export const BOARD_SIZE = 560;
const CX = BOARD_SIZE / 2;
const CY = BOARD_SIZE / 2;
const RING_RADII: Record<string, number> = { inner: 95, middle: 160, outer: 225 };

export interface NodeGeometry {
  position: number;
  region: RegionName;
  angle: number | null;
  x: number;
  y: number;
}

export function regionOf(position: number): RegionName {
  if (position === 25) return 'center';
  if (position <= 8) return 'inner';
  if (position <= 16) return 'middle';
  return 'outer';
}

export function angleOf(position: number): number | null {
  if (position === 25) return null;
  return ((position - 1) % 8) + 1;
}

function nodeXY(position: number): { x: number; y: number } {
  if (position === 25) return { x: CX, y: CY };
  const radius = RING_RADII[regionOf(position)];
  const theta = (((angleOf(position) as number) - 1) * 45 * Math.PI) / 180;
  return {
    x: CX + radius * Math.sin(theta),
    y: CY - radius * Math.cos(theta),
  };
}

/** All 25 board nodes in position order. */
export const BOARD_NODES: NodeGeometry[] = Array.from({ length: 25 }, (_, i) => {
  const position = i + 1;
  const { x, y } = nodeXY(position);
  return { position, region: regionOf(position), angle: angleOf(position), x, y };
});

export interface PairGeometry {
  a: number;
  b: number;
  round: number;
}

/** The 16 evaluation-pair connectors, grouped in four rounds. */
export const PAIR_CONNECTORS: PairGeometry[] = [
  { a: 25, b: 1, round: 1 }, { a: 9, b: 17, round: 1 },
  { a: 25, b: 5, round: 1 }, { a: 13, b: 21, round: 1 },
  { a: 25, b: 3, round: 2 }, { a: 11, b: 19, round: 2 },
  { a: 25, b: 7, round: 2 }, { a: 15, b: 23, round: 2 },
  { a: 25, b: 2, round: 3 }, { a: 10, b: 18, round: 3 },
  { a: 25, b: 6, round: 3 }, { a: 14, b: 22, round: 3 },
  { a: 25, b: 8, round: 4 }, { a: 16, b: 24, round: 4 },
  { a: 25, b: 4, round: 4 }, { a: 12, b: 20, round: 4 },
];

export function nodeAt(position: number): NodeGeometry {
  return BOARD_NODES[position - 1];
}
