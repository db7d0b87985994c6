/**
 * Stable color assignment for role identities.
 *
 * Role identity ids are hashed (FNV-1a) into a fixed colorblind-safe
 * palette, so a given identity gets the same color in every view and
 * across page loads without any shared lookup table.
 */

export const PALETTE = [
  "#E69F00", // orange
  "#56B4E9", // sky blue
  "#009E73", // bluish green
  "#F0E442", // yellow
  "#0072B2", // blue
  "#D55E00", // vermillion
  "#CC79A7", // reddish purple
  "#999999", // grey
] as const;

/** 32-bit FNV-1a hash of a string. */
export function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

/** Deterministic palette color for a role identity id. */
export function colorFor(colorId: string): string {
  return PALETTE[fnv1a(colorId) % PALETTE.length];
}
