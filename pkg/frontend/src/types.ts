/** Wire formats served by the analysis API, plus the view-model types. */

export interface LayoutConfigDoc {
  width: number;
  height: number;
  time_axis: "horizontal" | "vertical";
  threshold: number;
  iterations: number;
  seed: number;
  edge_width_range: [number, number];
  margin: number;
}

export interface LayoutNodeDoc {
  id: string;
  t: number;
  f: number;
  publisher: string;
  title: string;
  lead: string;
  image_url: string | null;
  color: string | null;
}

export interface EntryDoc {
  i: number;
  j: number;
  s: number;
}

export interface LayoutEdgeDoc extends EntryDoc {
  w: number;
}

export interface TickDoc {
  p: number;
  label: string;
}

export interface LayoutDoc {
  config: LayoutConfigDoc;
  nodes: LayoutNodeDoc[];
  edges: LayoutEdgeDoc[];
  ticks: TickDoc[];
  all_entries: EntryDoc[];
}

export interface ArticleDoc {
  id: string;
  publisher: string;
  title: string;
  main_text: string;
  published_at: string;
  url?: string;
  image_url?: string;
  color?: string;
}

export type Lod = "none" | "source" | "title" | "detailed";
export type LodChoice = Lod | "automated";
export type TimeAxis = "horizontal" | "vertical";

export interface ViewState {
  threshold: number;
  lod: LodChoice;
  timeAxis: TimeAxis;
  opacity: { nodes: number; edges: number; indications: number };
  zoom: number;
  pan: { x: number; y: number };
  hovered: string | null;
  hoveredEdge: [number, number] | null;
  popup: string | null;
}

export interface SceneNode {
  id: string;
  x: number;
  y: number;
  publisher: string;
  title: string;
  lead: string;
  imageUrl: string | null;
  color: string | null;
  opacity: number;
  hovered: boolean;
}

export interface SceneEdge {
  i: number;
  j: number;
  s: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  opacity: number;
  hovered: boolean;
}

export interface SceneTick {
  axis: "x" | "y";
  pos: number;
  label: string;
}

export interface SceneIndication {
  articleId: string;
  axis: "x" | "y";
  pos: number;
  highlighted: boolean;
  opacity: number;
}

export interface SceneTooltip {
  x: number;
  y: number;
  lines: string[];
}

export interface Scene {
  width: number;
  height: number;
  timeAxis: TimeAxis;
  lod: Lod;
  nodes: SceneNode[];
  edges: SceneEdge[];
  ticks: SceneTick[];
  indications: SceneIndication[];
  tooltip: SceneTooltip | null;
  banner: string | null;
}
