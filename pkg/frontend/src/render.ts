/** SVG renderer: draws a scene, delegates interaction to callbacks. */

import type { ArticleDoc, Scene, SceneNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderCallbacks {
  onNodeHover(id: string): void;
  onNodeLeave(): void;
  onNodeClick(id: string): void;
  onEdgeHover(i: number, j: number): void;
  onEdgeLeave(): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

function nodeCard(node: SceneNode, lod: Scene["lod"]): SVGGElement {
  const g = svgEl("g", { class: "node", "data-id": node.id });
  const fill = node.color ?? "#f3f4f6";
  const stroke = node.hovered ? "#111827" : "#9ca3af";
  if (lod === "none") {
    g.appendChild(svgEl("circle", { cx: node.x, cy: node.y, r: 5, fill, stroke, "stroke-width": node.hovered ? 2.5 : 1 }));
    return g;
  }
  const size: Record<string, [number, number]> = { source: [80, 16], title: [160, 32], detailed: [240, 120] };
  const [w, h] = size[lod]!;
  g.appendChild(svgEl("rect", {
    x: node.x - w / 2, y: node.y - h / 2, width: w, height: h, rx: 4,
    fill, stroke, "stroke-width": node.hovered ? 2.5 : 1,
  }));
  const addText = (text: string, dy: number, fontSize: number, bold = false) => {
    const el = svgEl("text", {
      x: node.x, y: node.y + dy, "text-anchor": "middle", "font-size": fontSize,
      "font-weight": bold ? "600" : "400", fill: "#111827",
    });
    el.textContent = text;
    g.appendChild(el);
  };
  const clip = (text: string, max: number) => (text.length > max ? `${text.slice(0, max - 1)}…` : text);
  if (lod === "source") {
    addText(clip(node.publisher, 14), 4, 11, true);
  } else if (lod === "title") {
    addText(clip(node.title, 28), -2, 11, true);
    addText(clip(node.publisher, 28), 12, 9);
  } else {
    addText(clip(node.title, 40), -40, 11, true);
    addText(clip(node.publisher, 40), -26, 9);
    if (node.imageUrl) {
      g.appendChild(svgEl("image", {
        href: node.imageUrl, x: node.x - 40, y: node.y - 20, width: 80, height: 36,
        preserveAspectRatio: "xMidYMid slice",
      }));
      addText(clip(node.lead, 44), 34, 9);
    } else {
      addText(clip(node.lead, 44), 0, 9);
      addText(clip(node.lead.slice(44), 44), 14, 9);
    }
  }
  return g;
}

export function renderScene(svg: SVGSVGElement, scene: Scene, callbacks: RenderCallbacks): void {
  svg.replaceChildren();
  svg.setAttribute("viewBox", `0 0 ${scene.width} ${scene.height}`);

  const banner = document.getElementById("banner");
  if (banner) {
    banner.textContent = scene.banner ?? "";
    banner.style.display = scene.banner ? "block" : "none";
  }
  if (scene.banner) return;

  const edgeLayer = svgEl("g", { class: "edges" });
  for (const edge of scene.edges) {
    const line = svgEl("line", {
      x1: edge.x1, y1: edge.y1, x2: edge.x2, y2: edge.y2,
      stroke: edge.hovered ? "#1d4ed8" : "#6b7280",
      "stroke-width": edge.width, "stroke-opacity": edge.opacity,
      "data-edge": `${edge.i}-${edge.j}`,
    });
    line.addEventListener("mouseenter", () => callbacks.onEdgeHover(edge.i, edge.j));
    line.addEventListener("mouseleave", () => callbacks.onEdgeLeave());
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const axisLayer = svgEl("g", { class: "axes" });
  axisLayer.appendChild(svgEl("line", { x1: 0, y1: scene.height - 18, x2: scene.width, y2: scene.height - 18, stroke: "#d1d5db" }));
  axisLayer.appendChild(svgEl("line", { x1: 18, y1: 0, x2: 18, y2: scene.height, stroke: "#d1d5db" }));
  for (const tick of scene.ticks) {
    const label = svgEl("text", {
      x: tick.axis === "x" ? tick.pos : 22,
      y: tick.axis === "x" ? scene.height - 4 : tick.pos,
      "font-size": 9, fill: "#6b7280",
      "text-anchor": tick.axis === "x" ? "middle" : "start",
      class: "tick",
    });
    label.textContent = tick.label;
    axisLayer.appendChild(label);
  }
  svg.appendChild(axisLayer);

  const indicationLayer = svgEl("g", { class: "indications" });
  for (const ind of scene.indications) {
    indicationLayer.appendChild(svgEl("circle", {
      cx: ind.axis === "x" ? ind.pos : 18,
      cy: ind.axis === "x" ? scene.height - 18 : ind.pos,
      r: ind.highlighted ? 5 : 3,
      fill: ind.highlighted ? "#dc2626" : "#9ca3af",
      "fill-opacity": ind.opacity,
      class: ind.highlighted ? "indication highlighted" : "indication",
      "data-article": ind.articleId,
    }));
  }
  svg.appendChild(indicationLayer);

  const nodeLayer = svgEl("g", { class: "nodes" });
  for (const node of scene.nodes) {
    const card = nodeCard(node, scene.lod);
    card.setAttribute("opacity", String(node.opacity));
    card.addEventListener("mouseenter", () => callbacks.onNodeHover(node.id));
    card.addEventListener("mouseleave", () => callbacks.onNodeLeave());
    card.addEventListener("click", () => callbacks.onNodeClick(node.id));
    nodeLayer.appendChild(card);
  }
  svg.appendChild(nodeLayer);

  if (scene.tooltip) {
    const tooltip = svgEl("g", { class: "tooltip" });
    const pad = 4;
    const width = Math.max(...scene.tooltip.lines.map((l) => l.length)) * 6 + pad * 2;
    tooltip.appendChild(svgEl("rect", {
      x: scene.tooltip.x + 10, y: scene.tooltip.y - 10,
      width, height: scene.tooltip.lines.length * 13 + pad * 2,
      fill: "#111827", rx: 3, "fill-opacity": 0.92,
    }));
    scene.tooltip.lines.forEach((line, n) => {
      const text = svgEl("text", {
        x: scene.tooltip!.x + 10 + pad, y: scene.tooltip!.y + 3 + n * 13,
        "font-size": 10, fill: "#f9fafb",
      });
      text.textContent = line;
      tooltip.appendChild(text);
    });
    svg.appendChild(tooltip);
  }
}

/** Full-article popup; pass an error message instead to report a failed fetch. */
export function renderPopup(
  container: HTMLElement,
  content: { article?: ArticleDoc; error?: string },
  onClose: () => void,
): void {
  container.replaceChildren();
  container.style.display = "block";

  const close = document.createElement("button");
  close.className = "popup-close";
  close.textContent = "×";
  close.addEventListener("click", () => {
    container.replaceChildren();
    container.style.display = "none";
    onClose();
  });
  container.appendChild(close);

  if (content.error !== undefined || !content.article) {
    const err = document.createElement("p");
    err.className = "popup-error";
    err.textContent = content.error ?? "article could not be loaded";
    container.appendChild(err);
    return;
  }

  const article = content.article;
  const title = document.createElement("h2");
  title.className = "popup-title";
  title.textContent = article.title;
  container.appendChild(title);

  const meta = document.createElement("p");
  meta.className = "popup-meta";
  meta.textContent = `${article.publisher} — ${article.published_at}`;
  container.appendChild(meta);

  if (article.image_url) {
    const img = document.createElement("img");
    img.className = "popup-image";
    img.src = article.image_url;
    container.appendChild(img);
  }

  for (const paragraph of article.main_text.split(/\n\s*\n/)) {
    if (!paragraph.trim()) continue;
    const p = document.createElement("p");
    p.textContent = paragraph.trim();
    container.appendChild(p);
  }
}
