/** Page wiring: controls, API calls, and the render loop. */

import { Api, ApiError, StaleResponse } from "./api.js";
import { buildScene } from "./scene.js";
import { renderPopup, renderScene } from "./render.js";
import {
  clearHover,
  closePopup,
  hoverEdge,
  hoverNode,
  initialState,
  openPopup,
  panBy,
  setLod,
  setOpacity,
  setThreshold,
  setZoom,
  swapAxes,
} from "./state.js";
import type { LayoutDoc, LodChoice, ViewState } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://127.0.0.1:8787";
}

function setStatus(text: string, isError = false): void {
  const status = $("status");
  status.textContent = text;
  status.classList.toggle("error", isError);
}

function main(): void {
  const api = new Api(apiBase());
  const svg = $("graph") as unknown as SVGSVGElement;
  const popupEl = $("popup");

  let corpusId: string | null = null;
  let analysisId: string | null = null;
  let layout: LayoutDoc | null = null;
  let state: ViewState | null = null;

  const redraw = () => {
    if (!layout || !state) return;
    renderScene(svg, buildScene(layout, state), {
      onNodeHover: (id) => update(hoverNode(state!, id)),
      onNodeLeave: () => update(clearHover(state!)),
      onNodeClick: (id) => void showPopup(id),
      onEdgeHover: (i, j) => update(hoverEdge(state!, [i, j])),
      onEdgeLeave: () => update(clearHover(state!)),
    });
  };

  const update = (next: ViewState) => {
    state = next;
    redraw();
  };

  async function showPopup(articleId: string): Promise<void> {
    if (!corpusId || !state) return;
    update(openPopup(state, articleId));
    try {
      const article = await api.article(corpusId, articleId);
      renderPopup(popupEl, { article }, () => update(closePopup(state!)));
    } catch (err) {
      renderPopup(popupEl, { error: err instanceof Error ? err.message : String(err) }, () =>
        update(closePopup(state!)));
    }
  }

  async function importAndAnalyze(): Promise<void> {
    const text = ($("articles") as HTMLTextAreaElement).value.trim();
    if (!text) {
      setStatus("paste an article JSON array first", true);
      return;
    }
    try {
      setStatus("importing…");
      const imported = await api.importArticles(text);
      corpusId = imported.corpus_id;
      await analyze();
    } catch (err) {
      setStatus(err instanceof ApiError ? `import failed: ${err.message}` : String(err), true);
    }
  }

  async function analyze(): Promise<void> {
    if (!corpusId) return;
    const measure = ($("measure") as HTMLSelectElement).value;
    try {
      setStatus(`analyzing with ${measure}…`);
      const analysis = await api.analyze(corpusId, { measure });
      analysisId = analysis.analysis_id;
      layout = await api.layout(analysisId);
      state = initialState(layout.config);
      syncControls();
      redraw();
      setStatus(`loaded ${layout.nodes.length} articles, ${layout.all_entries.length} scored pairs`);
    } catch (err) {
      if (err instanceof StaleResponse) return;
      setStatus(err instanceof ApiError ? `analysis failed: ${err.message}` : String(err), true);
    }
  }

  /** Re-run the server layout at the current threshold (positions change). */
  async function relayout(): Promise<void> {
    if (!analysisId || !state) return;
    try {
      setStatus("recomputing layout…");
      layout = await api.layout(analysisId, { threshold: state.threshold });
      redraw();
      setStatus("layout recomputed");
    } catch (err) {
      if (err instanceof StaleResponse) return;
      setStatus(String(err), true);
    }
  }

  function syncControls(): void {
    if (!state) return;
    ($("threshold") as HTMLInputElement).value = String(state.threshold);
    $("threshold-value").textContent = state.threshold.toFixed(2);
  }

  $("import").addEventListener("click", () => void importAndAnalyze());
  $("measure").addEventListener("change", () => void analyze());
  $("relayout").addEventListener("click", () => void relayout());
  $("swap").addEventListener("click", () => state && update(swapAxes(state)));
  $("threshold").addEventListener("input", (event) => {
    if (!state) return;
    const value = Number((event.target as HTMLInputElement).value);
    $("threshold-value").textContent = value.toFixed(2);
    update(setThreshold(state, value));
  });
  $("lod").addEventListener("change", (event) => {
    if (!state) return;
    update(setLod(state, (event.target as HTMLSelectElement).value as LodChoice));
  });
  for (const target of ["nodes", "edges", "indications"] as const) {
    $(`opacity-${target}`).addEventListener("input", (event) => {
      if (!state) return;
      update(setOpacity(state, target, Number((event.target as HTMLInputElement).value)));
    });
  }

  svg.addEventListener("wheel", (event) => {
    if (!state) return;
    event.preventDefault();
    const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
    update(setZoom(state, state.zoom * factor));
  }, { passive: false });

  let dragging: { x: number; y: number } | null = null;
  svg.addEventListener("mousedown", (event) => {
    dragging = { x: event.clientX, y: event.clientY };
  });
  window.addEventListener("mousemove", (event) => {
    if (!dragging || !state) return;
    update(panBy(state, event.clientX - dragging.x, event.clientY - dragging.y));
    dragging = { x: event.clientX, y: event.clientY };
  });
  window.addEventListener("mouseup", () => {
    dragging = null;
  });

  setStatus(`ready — API at ${apiBase()}`);
}

main();
