/** View state and its pure transitions. */

import type { LayoutConfigDoc, LodChoice, ViewState } from "./types.js";

export function initialState(config: LayoutConfigDoc): ViewState {
  return {
    threshold: config.threshold,
    lod: "automated",
    timeAxis: config.time_axis,
    opacity: { nodes: 1, edges: 1, indications: 1 },
    zoom: 1,
    pan: { x: 0, y: 0 },
    hovered: null,
    hoveredEdge: null,
    popup: null,
  };
}

const clamp01 = (v: number) => Math.min(1, Math.max(0, v));

export function setThreshold(state: ViewState, threshold: number): ViewState {
  return { ...state, threshold: clamp01(threshold) };
}

export function setLod(state: ViewState, lod: LodChoice): ViewState {
  return { ...state, lod };
}

export function swapAxes(state: ViewState): ViewState {
  return { ...state, timeAxis: state.timeAxis === "horizontal" ? "vertical" : "horizontal" };
}

export function setOpacity(
  state: ViewState,
  target: "nodes" | "edges" | "indications",
  value: number,
): ViewState {
  return { ...state, opacity: { ...state.opacity, [target]: clamp01(value) } };
}

export function hoverNode(state: ViewState, id: string | null): ViewState {
  return { ...state, hovered: id, hoveredEdge: null };
}

export function hoverEdge(state: ViewState, edge: [number, number] | null): ViewState {
  return { ...state, hoveredEdge: edge, hovered: null };
}

export function clearHover(state: ViewState): ViewState {
  return { ...state, hovered: null, hoveredEdge: null };
}

export function openPopup(state: ViewState, id: string): ViewState {
  return { ...state, popup: id };
}

export function closePopup(state: ViewState): ViewState {
  return { ...state, popup: null };
}

export function setZoom(state: ViewState, zoom: number): ViewState {
  return { ...state, zoom: Math.max(1e-3, zoom) };
}

export function panBy(state: ViewState, dx: number, dy: number): ViewState {
  return { ...state, pan: { x: state.pan.x + dx, y: state.pan.y + dy } };
}
