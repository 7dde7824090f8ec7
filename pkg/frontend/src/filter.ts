/** Client-side edge filtering; must agree with the server edge for edge. */

import type { EntryDoc } from "./types.js";

/** Entries at or above the threshold, ordered by (i, j). */
export function filterEntries(entries: EntryDoc[], threshold: number): EntryDoc[] {
  return entries
    .filter((e) => e.s >= threshold)
    .sort((a, b) => (a.i - b.i) || (a.j - b.j));
}

/** Same affine similarity-to-pixels mapping the server uses. */
export function edgeWidth(s: number, threshold: number, range: [number, number]): number {
  const [lo, hi] = range;
  if (threshold >= 1.0) return hi;
  return lo + ((s - threshold) / (1.0 - threshold)) * (hi - lo);
}
