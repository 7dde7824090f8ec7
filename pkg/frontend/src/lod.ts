/** Level-of-detail selection, mirroring the server's box constants. */

import type { Lod } from "./types.js";

export const LOD_BOXES: Record<Lod, [number, number]> = {
  none: [8, 8],
  source: [80, 16],
  title: [160, 32],
  detailed: [240, 120],
};

export const LOD_OVERLAP_LIMIT = 0.1;

const DETAIL_ORDER: Lod[] = ["detailed", "title", "source"];

export function overlapRatio(positions: Array<[number, number]>, boxW: number, boxH: number): number {
  const k = positions.length;
  if (k === 0) return 0;
  let overlap = 0;
  for (let i = 0; i < k; i++) {
    for (let j = i + 1; j < k; j++) {
      const [xi, yi] = positions[i]!;
      const [xj, yj] = positions[j]!;
      overlap += Math.max(0, boxW - Math.abs(xi - xj)) * Math.max(0, boxH - Math.abs(yi - yj));
    }
  }
  return overlap / (k * boxW * boxH);
}

/** Most detailed level whose estimated label overlap stays under 10%. */
export function autoLod(positions: Array<[number, number]>): Lod {
  for (const lod of DETAIL_ORDER) {
    const [w, h] = LOD_BOXES[lod];
    if (overlapRatio(positions, w, h) < LOD_OVERLAP_LIMIT) return lod;
  }
  return "none";
}
