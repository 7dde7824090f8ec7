import { describe, expect, it } from "vitest";

import { buildScene, validateLayoutDoc } from "../src/scene.js";
import { hoverEdge, hoverNode, initialState, panBy, setThreshold, setZoom, swapAxes } from "../src/state.js";
import { loadFixtureLayout } from "./helpers.js";

const layout = loadFixtureLayout();
const base = () => initialState(layout.config);

describe("scene construction", () => {
  it("maps nodes to screen coordinates per orientation", () => {
    const horizontal = buildScene(layout, base());
    expect(horizontal.banner).toBeNull();
    expect(horizontal.nodes).toHaveLength(layout.nodes.length);
    horizontal.nodes.forEach((node, idx) => {
      expect(node.x).toBe(layout.nodes[idx]!.t);
      expect(node.y).toBe(layout.nodes[idx]!.f);
    });

    const vertical = buildScene(layout, swapAxes(base()));
    vertical.nodes.forEach((node, idx) => {
      expect(node.x).toBe(layout.nodes[idx]!.f);
      expect(node.y).toBe(layout.nodes[idx]!.t);
    });
  });

  it("applies zoom and pan as a pure view transform", () => {
    const doc_before = JSON.stringify(layout);
    const zoomed = buildScene(layout, panBy(setZoom(base(), 2), 10, -5));
    zoomed.nodes.forEach((node, idx) => {
      expect(node.x).toBeCloseTo(layout.nodes[idx]!.t * 2 + 10, 10);
      expect(node.y).toBeCloseTo(layout.nodes[idx]!.f * 2 - 5, 10);
    });
    expect(JSON.stringify(layout)).toBe(doc_before); // layout data never mutated
  });

  it("draws every entry at threshold 0 and none below a 1.0 slider except exact maxima", () => {
    const all = buildScene(layout, setThreshold(base(), 0));
    expect(all.edges).toHaveLength(layout.all_entries.length);

    const top = buildScene(layout, setThreshold(base(), 1.0));
    for (const edge of top.edges) expect(edge.s).toBe(1.0);
  });

  it("never adds an edge when the slider rises", () => {
    let previous = buildScene(layout, setThreshold(base(), 0)).edges.length;
    for (const t of [0.1, 0.2, 0.5, 0.8, 1.0]) {
      const count = buildScene(layout, setThreshold(base(), t)).edges.length;
      expect(count).toBeLessThanOrEqual(previous);
      previous = count;
    }
  });

  it("highlights exactly the two axis indications of the hovered article", () => {
    const hovered = buildScene(layout, hoverNode(base(), layout.nodes[2]!.id));
    const highlighted = hovered.indications.filter((ind) => ind.highlighted);
    expect(highlighted).toHaveLength(2);
    expect(new Set(highlighted.map((ind) => ind.articleId))).toEqual(new Set([layout.nodes[2]!.id]));
    expect(new Set(highlighted.map((ind) => ind.axis))).toEqual(new Set(["x", "y"]));
  });

  it("highlights nothing when hovering empty space", () => {
    const scene = buildScene(layout, base());
    expect(scene.indications.filter((ind) => ind.highlighted)).toHaveLength(0);
    expect(scene.tooltip).toBeNull();
  });

  it("shows the pair similarity to two decimals in the edge tooltip", () => {
    const edge = layout.edges[0]!;
    const scene = buildScene(layout, hoverEdge(base(), [edge.i, edge.j]));
    expect(scene.tooltip).not.toBeNull();
    expect(scene.tooltip!.lines.join(" ")).toContain(edge.s.toFixed(2));
  });

  it("swapping axes twice restores the exact original scene", () => {
    const once = swapAxes(base());
    const twice = swapAxes(once);
    expect(JSON.stringify(buildScene(layout, twice))).toBe(JSON.stringify(buildScene(layout, base())));
    // and a single swap really moves the ticks to the other axis
    expect(new Set(buildScene(layout, once).ticks.map((t) => t.axis))).toEqual(new Set(["y"]));
    expect(new Set(buildScene(layout, base()).ticks.map((t) => t.axis))).toEqual(new Set(["x"]));
  });

  it("surfaces schema problems as a banner instead of a blank scene", () => {
    expect(validateLayoutDoc(null)).not.toBeNull();
    expect(validateLayoutDoc({})).not.toBeNull();
    expect(validateLayoutDoc(layout)).toBeNull();

    const scene = buildScene({ nodes: [] }, base());
    expect(scene.banner).toBeTruthy();
    expect(scene.nodes).toHaveLength(0);
  });

  it("resolves the automated level of detail from the zoomed positions", () => {
    const farApart = {
      ...layout,
      nodes: layout.nodes.slice(0, 2).map((n, idx) => ({ ...n, t: idx * 300, f: idx * 300 })),
      all_entries: [],
      edges: [],
    };
    expect(buildScene(farApart, base()).lod).toBe("detailed");
    // zooming far out stacks everything onto nearly one point
    const squeezed = buildScene(farApart, setZoom(base(), 0.01));
    expect(["none", "source"]).toContain(squeezed.lod);
  });
});
