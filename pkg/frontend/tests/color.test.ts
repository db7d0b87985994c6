import { describe, expect, it } from "vitest";
import { PALETTE, colorFor, fnv1a } from "../src/color.js";

describe("role identity palette", () => {
  it("fnv1a matches the reference 32-bit values", () => {
    // Reference values computed from the FNV-1a definition
    // (offset basis 0x811c9dc5, prime 0x01000193).
    expect(fnv1a("")).toBe(0x811c9dc5);
    expect(fnv1a("a")).toBe(0xe40c292c);
    expect(fnv1a("foobar")).toBe(0xbf9cf968);
  });

  it("is stable across calls and instances", () => {
    const first = ["role-0", "role-1", "role-17"].map(colorFor);
    const second = ["role-0", "role-1", "role-17"].map(colorFor);
    expect(first).toEqual(second);
  });

  it("always returns a palette color", () => {
    for (let i = 0; i < 100; i++) {
      expect(PALETTE).toContain(colorFor(`role-${i}`));
    }
  });

  it("distinguishes at least several nearby identities", () => {
    const colors = new Set(["role-0", "role-1", "role-2", "role-3"].map(colorFor));
    expect(colors.size).toBeGreaterThanOrEqual(3);
  });
});
