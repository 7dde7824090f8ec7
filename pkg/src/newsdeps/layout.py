"""Temporal-force-directed layout: time axis pinned, free axis optimized.

Nodes are first placed at their temporal position along one axis; the other
coordinate starts random and is then relaxed with Fruchterman-Reingold
forces so that similar articles end up close while everything keeps its
place in time. Distances for the force model are measured in the full 2-D
plane: articles far apart in time should barely influence each other even
though only the free coordinate ever moves.

The layout plane is orientation-independent: the time coordinate always
spans the width and the free coordinate the height. ``time_axis`` is a
presentation hint telling clients which screen axis shows time, which makes
an axis swap an exact exchange of coordinate roles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .corpus import Corpus
from .errors import MismatchedIds
from .similarity import SimilarityMatrix

TIME_AXES = ("horizontal", "vertical")

# Level-of-detail label boxes (width, height) in pixels, node-centered.
LOD_BOXES = {
    "none": (8.0, 8.0),
    "source": (80.0, 16.0),
    "title": (160.0, 32.0),
    "detailed": (240.0, 120.0),
}
LOD_OVERLAP_LIMIT = 0.10

_TICK_COUNT = 5


@dataclass(frozen=True)
class LayoutConfig:
    """Viewport and force-model parameters."""

    width: float = 1200.0
    height: float = 800.0
    time_axis: str = "horizontal"
    threshold: float = 0.1
    iterations: int = 500
    seed: int = 42
    edge_width_range: tuple[float, float] = (0.5, 8.0)
    margin: float = 40.0

    def __post_init__(self) -> None:
        if self.time_axis not in TIME_AXES:
            raise ValueError(f"time_axis must be one of {TIME_AXES}")
        if self.margin < 0:
            raise ValueError("margin must be >= 0")
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise ValueError("viewport must be larger than twice the margin")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must be in [0, 1]")
        # 0 iterations = pure temporal placement (random free axis), kept
        # valid so the initial state is reachable through the public API
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        lo, hi = self.edge_width_range
        if not lo < hi:
            raise ValueError("edge_width_range must be (min, max) with min < max")

    def to_json_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "time_axis": self.time_axis,
            "threshold": self.threshold,
            "iterations": self.iterations,
            "seed": self.seed,
            "edge_width_range": list(self.edge_width_range),
            "margin": self.margin,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LayoutConfig":
        kwargs = dict(doc)
        if "edge_width_range" in kwargs:
            kwargs["edge_width_range"] = tuple(kwargs["edge_width_range"])
        return cls(**kwargs)


@dataclass(frozen=True)
class LayoutNode:
    """Node position plus everything the node card may display."""

    id: str
    time_coord: float
    free_coord: float
    publisher: str
    title: str
    lead: str
    image_url: str | None = None
    color: str | None = None


@dataclass(frozen=True)
class LayoutEdge:
    i: int
    j: int
    similarity: float
    width_px: float


@dataclass(frozen=True)
class AxisIndication:
    """Projection markers of one article onto both axes."""

    id: str
    time_px: float
    free_px: float


@dataclass(frozen=True)
class TFDLayout:
    config: LayoutConfig
    nodes: tuple[LayoutNode, ...]
    edges: tuple[LayoutEdge, ...]
    time_ticks: tuple[tuple[float, str], ...]
    axis_indications: tuple[AxisIndication, ...] = field(default=())


def time_axis_map(corpus: Corpus, config: LayoutConfig) -> list[float]:
    """Affine map of publication instants onto [margin, width - margin].

    Returned in chronological order. A single article or an all-equal
    corpus collapses to the axis midpoint.
    """
    ordered = corpus.in_time_order()
    lo = config.margin
    hi = config.width - config.margin
    if not ordered:
        return []
    t0 = ordered[0].published_at
    span = (ordered[-1].published_at - t0).total_seconds()
    if span <= 0:
        return [config.width / 2.0] * len(ordered)
    return [lo + (a.published_at - t0).total_seconds() / span * (hi - lo) for a in ordered]


def filter_edges(m: SimilarityMatrix, threshold: float) -> list[tuple[int, int, float]]:
    """Entries at or above the threshold, ordered by (i, j)."""
    return [(i, j, m.entries[(i, j)]) for i, j in sorted(m.entries) if m.entries[(i, j)] >= threshold]


def edge_width(s: float, threshold: float, width_range: tuple[float, float] = (0.5, 8.0)) -> float:
    """Map similarity in [threshold, 1] onto the pixel width range."""
    lo, hi = width_range
    if threshold >= 1.0:
        return hi
    return lo + (s - threshold) / (1.0 - threshold) * (hi - lo)


def _format_tick(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%d %H:%M")


def _time_ticks(corpus: Corpus, config: LayoutConfig) -> tuple[tuple[float, str], ...]:
    ordered = corpus.in_time_order()
    if not ordered:
        return ()
    t0 = ordered[0].published_at
    t1 = ordered[-1].published_at
    if t1 == t0:
        return ((config.width / 2.0, _format_tick(t0)),)
    lo = config.margin
    hi = config.width - config.margin
    ticks = []
    for n in range(_TICK_COUNT):
        frac = n / (_TICK_COUNT - 1)
        ticks.append((lo + frac * (hi - lo), _format_tick(t0 + (t1 - t0) * frac)))
    return tuple(ticks)


def run_tfd_layout(m: SimilarityMatrix, corpus: Corpus, config: LayoutConfig) -> TFDLayout:
    """Compute the full layout for a corpus and its similarity matrix.

    Time coordinates are frozen; free coordinates start uniformly random
    from ``config.seed`` and relax under Fruchterman-Reingold forces
    (repulsion k_fr^2/d between all pairs, attraction s*d^2/k_fr along
    retained edges, k_fr = sqrt(area/k)) with only the free-axis component
    applied. Displacement per round is capped by a linearly cooling
    temperature starting at a tenth of the free extent. Deterministic for
    identical inputs.
    """
    expected_ids = corpus.ids_in_time_order()
    if tuple(m.article_ids) != expected_ids:
        raise MismatchedIds("matrix article_ids do not match the corpus in time order")
    k = corpus.k
    if k < 1:
        raise ValueError("layout needs at least one article")

    t = np.asarray(time_axis_map(corpus, config), dtype=np.float64)
    margin = config.margin
    free_lo, free_hi = margin, config.height - margin
    retained = filter_edges(m, config.threshold)

    if k == 1:
        f = np.asarray([config.height / 2.0])
    else:
        rng = np.random.default_rng(config.seed)
        f = rng.uniform(free_lo, free_hi, size=k)
        # static per-node jitter resolves coincident nodes deterministically
        jitter = rng.uniform(-1e-6, 1e-6, size=k)
        jd = jitter[:, None] - jitter[None, :]
        jd[jd == 0.0] = 1e-6

        dt = t[:, None] - t[None, :]
        dt2 = dt * dt
        k_fr = math.sqrt(config.width * config.height / k)
        t0_temp = 0.1 * config.height

        ei = np.asarray([i for i, _, _ in retained], dtype=np.intp)
        ej = np.asarray([j for _, j, _ in retained], dtype=np.intp)
        es = np.asarray([s for _, _, s in retained], dtype=np.float64)

        eye = np.eye(k, dtype=bool)
        for it in range(config.iterations):
            df = f[:, None] - f[None, :]
            d2 = df * df + dt2
            coincident = (d2 == 0.0) & ~eye
            if coincident.any():
                df = np.where(coincident, jd, df)
                d2 = df * df + dt2
            d = np.sqrt(d2)
            np.fill_diagonal(d, 1.0)  # diagonal excluded from every sum

            # repulsion k_fr^2/d, free-axis component df/d
            contrib = df / (d * d)
            np.fill_diagonal(contrib, 0.0)
            disp = (k_fr * k_fr) * contrib.sum(axis=1)

            # attraction s*d^2/k_fr along retained edges, component df/d
            if ei.size:
                pull = es * d[ei, ej] * df[ei, ej] / k_fr
                np.subtract.at(disp, ei, pull)
                np.add.at(disp, ej, pull)

            temp = t0_temp * (1.0 - it / config.iterations)
            f = f + np.sign(disp) * np.minimum(np.abs(disp), temp)

        f = np.clip(f, free_lo, free_hi)

    ordered = corpus.in_time_order()
    nodes = tuple(
        LayoutNode(
            id=a.id,
            time_coord=float(t[idx]),
            free_coord=float(f[idx]),
            publisher=a.publisher,
            title=a.title,
            lead=a.lead_paragraph,
            image_url=a.image_url,
            color=a.color,
        )
        for idx, a in enumerate(ordered)
    )
    edges = tuple(
        LayoutEdge(i=i, j=j, similarity=s, width_px=edge_width(s, config.threshold, config.edge_width_range))
        for i, j, s in retained
    )
    indications = tuple(AxisIndication(n.id, n.time_coord, n.free_coord) for n in nodes)
    return TFDLayout(
        config=config,
        nodes=nodes,
        edges=edges,
        time_ticks=_time_ticks(corpus, config),
        axis_indications=indications,
    )


def layout_energy(layout: TFDLayout, m: SimilarityMatrix, k_fr: float) -> float:
    """Potential-style score of a layout, used as a test oracle.

    E = sum over retained edges of s*d^3/(3*k_fr) plus sum over all node
    pairs of k_fr^3/d; coincident nodes are held 1e-6 apart.
    """
    pos = [(n.time_coord, n.free_coord) for n in layout.nodes]
    energy = 0.0
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            d = max(math.hypot(pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]), 1e-6)
            energy += k_fr**3 / d
    for edge in layout.edges:
        a, b = pos[edge.i], pos[edge.j]
        d = max(math.hypot(a[0] - b[0], a[1] - b[1]), 1e-6)
        energy += edge.similarity * d**3 / (3.0 * k_fr)
    return energy


def _overlap_ratio(nodes: tuple[LayoutNode, ...], box_w: float, box_h: float) -> float:
    """Total pairwise box-overlap area over total box area."""
    k = len(nodes)
    overlap = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            dx = abs(nodes[i].time_coord - nodes[j].time_coord)
            dy = abs(nodes[i].free_coord - nodes[j].free_coord)
            overlap += max(0.0, box_w - dx) * max(0.0, box_h - dy)
    return overlap / (k * box_w * box_h)


def auto_lod(layout: TFDLayout, config: LayoutConfig) -> str:
    """Most detailed level whose estimated label overlap stays under 10%."""
    for lod in ("detailed", "title", "source"):
        box_w, box_h = LOD_BOXES[lod]
        if _overlap_ratio(layout.nodes, box_w, box_h) < LOD_OVERLAP_LIMIT:
            return lod
    return "none"


def layout_to_json_dict(layout: TFDLayout, m: SimilarityMatrix) -> dict:
    """Export a layout with the full entry list for client-side filtering."""
    return {
        "config": layout.config.to_json_dict(),
        "nodes": [
            {
                "id": n.id,
                "t": round(n.time_coord, 2),
                "f": round(n.free_coord, 2),
                "publisher": n.publisher,
                "title": n.title,
                "lead": n.lead,
                "image_url": n.image_url,
                "color": n.color,
            }
            for n in layout.nodes
        ],
        "edges": [
            {"i": e.i, "j": e.j, "s": round(e.similarity, 9), "w": round(e.width_px, 2)}
            for e in layout.edges
        ],
        "ticks": [{"p": round(px, 2), "label": label} for px, label in layout.time_ticks],
        "all_entries": [
            {"i": i, "j": j, "s": round(m.entries[(i, j)], 9)} for i, j in sorted(m.entries)
        ],
    }
