/** Pure view-model construction: layout document + view state -> scene.
 *
 * Everything the renderer draws is decided here, so the interaction rules
 * (threshold filtering from the full entry list, LOD choice, axis roles,
 * hover highlighting) are all plain-data testable.
 */

import { edgeWidth, filterEntries } from "./filter.js";
import { autoLod } from "./lod.js";
import type {
  LayoutDoc,
  Lod,
  Scene,
  SceneEdge,
  SceneIndication,
  SceneNode,
  SceneTick,
  SceneTooltip,
  ViewState,
} from "./types.js";

/** Returns a human-readable problem description, or null when valid. */
export function validateLayoutDoc(doc: unknown): string | null {
  if (typeof doc !== "object" || doc === null) return "layout document is not an object";
  const d = doc as Record<string, unknown>;
  for (const key of ["config", "nodes", "edges", "ticks", "all_entries"]) {
    if (!(key in d)) return `layout document is missing "${key}"`;
  }
  if (!Array.isArray(d.nodes) || !Array.isArray(d.edges) || !Array.isArray(d.ticks) || !Array.isArray(d.all_entries)) {
    return "layout document collections must be arrays";
  }
  const config = d.config as Record<string, unknown>;
  for (const key of ["width", "height", "threshold", "edge_width_range", "time_axis"]) {
    if (!(key in config)) return `layout config is missing "${key}"`;
  }
  for (const node of d.nodes as Array<Record<string, unknown>>) {
    if (typeof node.id !== "string" || typeof node.t !== "number" || typeof node.f !== "number") {
      return "layout node is missing id/t/f";
    }
  }
  for (const entry of d.all_entries as Array<Record<string, unknown>>) {
    if (typeof entry.i !== "number" || typeof entry.j !== "number" || typeof entry.s !== "number") {
      return "layout entry is missing i/j/s";
    }
  }
  return null;
}

function emptyScene(banner: string): Scene {
  return {
    width: 800,
    height: 600,
    timeAxis: "horizontal",
    lod: "none",
    nodes: [],
    edges: [],
    ticks: [],
    indications: [],
    tooltip: null,
    banner,
  };
}

export function buildScene(doc: unknown, state: ViewState): Scene {
  const problem = validateLayoutDoc(doc);
  if (problem !== null) return emptyScene(problem);
  const layout = doc as LayoutDoc;
  const horizontal = state.timeAxis === "horizontal";

  const toScreen = (t: number, f: number): [number, number] => {
    const bx = horizontal ? t : f;
    const by = horizontal ? f : t;
    return [bx * state.zoom + state.pan.x, by * state.zoom + state.pan.y];
  };

  const positions = layout.nodes.map((n) => toScreen(n.t, n.f));
  const effectiveLod: Lod = state.lod === "automated" ? autoLod(positions) : state.lod;

  const nodes: SceneNode[] = layout.nodes.map((n, idx) => {
    const [x, y] = positions[idx]!;
    return {
      id: n.id,
      x,
      y,
      publisher: n.publisher,
      title: n.title,
      lead: n.lead,
      imageUrl: n.image_url,
      color: n.color,
      opacity: state.opacity.nodes,
      hovered: state.hovered === n.id,
    };
  });

  const edges: SceneEdge[] = filterEntries(layout.all_entries, state.threshold).map((entry) => {
    const a = positions[entry.i];
    const b = positions[entry.j];
    const hovered =
      state.hoveredEdge !== null && state.hoveredEdge[0] === entry.i && state.hoveredEdge[1] === entry.j;
    return {
      i: entry.i,
      j: entry.j,
      s: entry.s,
      x1: a?.[0] ?? 0,
      y1: a?.[1] ?? 0,
      x2: b?.[0] ?? 0,
      y2: b?.[1] ?? 0,
      width: edgeWidth(entry.s, state.threshold, layout.config.edge_width_range),
      opacity: state.opacity.edges,
      hovered,
    };
  });

  const timeScreenAxis: "x" | "y" = horizontal ? "x" : "y";
  const freeScreenAxis: "x" | "y" = horizontal ? "y" : "x";

  const ticks: SceneTick[] = layout.ticks.map((tick) => ({
    axis: timeScreenAxis,
    pos: tick.p * state.zoom + (horizontal ? state.pan.x : state.pan.y),
    label: tick.label,
  }));

  const indications: SceneIndication[] = layout.nodes.flatMap((n, idx) => {
    const [x, y] = positions[idx]!;
    const highlighted = state.hovered === n.id;
    return [
      { articleId: n.id, axis: timeScreenAxis, pos: horizontal ? x : y, highlighted, opacity: state.opacity.indications },
      { articleId: n.id, axis: freeScreenAxis, pos: horizontal ? y : x, highlighted, opacity: state.opacity.indications },
    ];
  });

  return {
    width: layout.config.width,
    height: layout.config.height,
    timeAxis: state.timeAxis,
    lod: effectiveLod,
    nodes,
    edges,
    ticks,
    indications,
    tooltip: buildTooltip(layout, state, positions),
    banner: null,
  };
}

function buildTooltip(
  layout: LayoutDoc,
  state: ViewState,
  positions: Array<[number, number]>,
): SceneTooltip | null {
  if (state.hovered !== null) {
    const idx = layout.nodes.findIndex((n) => n.id === state.hovered);
    if (idx < 0) return null;
    const node = layout.nodes[idx]!;
    const [x, y] = positions[idx]!;
    return { x, y, lines: [node.title, node.publisher] };
  }
  if (state.hoveredEdge !== null) {
    const [i, j] = state.hoveredEdge;
    const entry = layout.all_entries.find((e) => e.i === i && e.j === j);
    const a = positions[i];
    const b = positions[j];
    if (!entry || !a || !b) return null;
    const from = layout.nodes[i]!;
    const to = layout.nodes[j]!;
    return {
      x: (a[0] + b[0]) / 2,
      y: (a[1] + b[1]) / 2,
      lines: [`${from.publisher} → ${to.publisher}`, `similarity ${entry.s.toFixed(2)}`],
    };
  }
  return null;
}
