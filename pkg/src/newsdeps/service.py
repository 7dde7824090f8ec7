"""Local HTTP API: import corpora, run analyses, serve layouts.

Single-tenant, unauthenticated, meant to run on loopback. File import is
all-or-nothing; URL import is best-effort per item because remote content
is outside the user's control.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

import httpx
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .corpus import Corpus, build_corpus
from .errors import CorpusTooSmall, FetchFailure, InvalidArticle, MalformedInput, ParseFailure
from .extract import extract_from_html
from .layout import LayoutConfig, layout_to_json_dict, run_tfd_layout
from .similarity import MEASURES, MeasureParams, SimilarityMatrix, build_d2d_matrix, normalize_matrix
from .store import Store, resolve_data_dir
from . import corpus as corpus_mod

log = logging.getLogger("newsdeps.service")

MEASURE_ALIASES = {"tfidf": "tfidf_cosine"}

Fetcher = Callable[[str], bytes]


def canonical_measure(name: str) -> str:
    measure = MEASURE_ALIASES.get(name, name)
    if measure not in MEASURES:
        valid = sorted(set(MEASURES) | set(MEASURE_ALIASES))
        raise ValueError(f"unknown measure {name!r}; valid measures: {', '.join(valid)}")
    return measure


@dataclass(frozen=True)
class AnalysisConfig:
    """Everything one analysis run depends on."""

    measure: str
    params: MeasureParams = MeasureParams()
    normalize: bool = True
    threshold: float = 0.1
    layout: LayoutConfig = LayoutConfig()

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure,
            "params": {
                "sherlock_ngram": self.params.sherlock_ngram,
                "sherlock_zerobits": self.params.sherlock_zerobits,
                "gst_min_match": self.params.gst_min_match,
            },
            "normalize": self.normalize,
            "threshold": self.threshold,
            "layout": self.layout.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "AnalysisConfig":
        if not isinstance(doc, dict):
            raise ValueError("analysis config must be a JSON object")
        if "measure" not in doc:
            raise ValueError("analysis config requires 'measure'")
        measure = canonical_measure(doc["measure"])
        params = MeasureParams(**doc.get("params", {}))
        threshold = float(doc.get("threshold", 0.1))
        if not 0.0 <= threshold <= 1.0:
            raise ValueError("threshold must be in [0, 1]")
        layout_doc = dict(doc.get("layout", {}))
        layout_doc.setdefault("threshold", threshold)
        layout = LayoutConfig.from_json_dict(layout_doc)
        return cls(
            measure=measure,
            params=params,
            normalize=bool(doc.get("normalize", True)),
            threshold=threshold,
            layout=layout,
        )


def run_analysis(corpus: Corpus, config: AnalysisConfig) -> SimilarityMatrix:
    """Build the pairwise matrix and apply configured normalization."""
    matrix = build_d2d_matrix(corpus, config.measure, config.params)
    if config.normalize and matrix.entries:
        matrix = normalize_matrix(matrix)
    return matrix


def _default_fetcher(url: str) -> bytes:
    try:
        response = httpx.get(url, timeout=20.0, follow_redirects=True)
        response.raise_for_status()
        return response.content
    except httpx.HTTPError as exc:
        raise FetchFailure(f"could not fetch {url}: {exc}") from exc


def _error(status: int, code: str, **detail) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, **detail})


def create_app(data_dir: str | Path | None = None, fetcher: Fetcher | None = None) -> FastAPI:
    store = Store(resolve_data_dir(data_dir))
    fetch = fetcher or _default_fetcher

    app = FastAPI(title="newsdeps", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.post("/corpora")
    async def import_corpus(request: Request):
        body = await request.body()
        try:
            corpus = corpus_mod.parse_article_json(body)
        except MalformedInput as exc:
            return _error(400, "malformed_input", detail=str(exc))
        except InvalidArticle as exc:
            return _error(422, "invalid_article", index=exc.index, field=exc.field, detail=str(exc))
        corpus_id = store.save_corpus(corpus)
        return JSONResponse(
            status_code=201,
            content={"corpus_id": corpus_id, "k": corpus.k, "warnings": list(corpus.warnings)},
        )

    @app.post("/corpora/urls")
    async def import_urls(request: Request):
        try:
            doc = await request.json()
        except Exception:
            return _error(400, "malformed_input", detail="body must be JSON")
        urls = doc.get("urls") if isinstance(doc, dict) else None
        if not isinstance(urls, list) or not all(isinstance(u, str) for u in urls):
            return _error(400, "malformed_input", detail="body must be {\"urls\": [str]}")

        articles, errors = [], []
        for url in urls:
            try:
                html = fetch(url)
                articles.append(extract_from_html(html, url, ordinal=len(articles)))
            except (FetchFailure, ParseFailure) as exc:
                log.info("url import failed for %s: %s", url, exc)
                errors.append({"url": url, "error": str(exc)})
        if not articles:
            return _error(422, "no_articles_imported", errors=errors)
        try:
            corpus = build_corpus(articles)
        except InvalidArticle as exc:
            return _error(422, "invalid_article", index=exc.index, field=exc.field, detail=str(exc))
        corpus_id = store.save_corpus(corpus)
        return JSONResponse(
            status_code=200,
            content={
                "corpus_id": corpus_id,
                "k": corpus.k,
                "warnings": list(corpus.warnings),
                "errors": errors,
            },
        )

    @app.get("/corpora/{corpus_id}")
    def get_corpus(corpus_id: str):
        try:
            corpus = store.load_corpus(corpus_id)
        except KeyError:
            return _error(404, "not_found", detail=f"unknown corpus {corpus_id!r}")
        return {
            "corpus_id": corpus_id,
            "k": corpus.k,
            "warnings": list(corpus.warnings),
            "articles": [a.to_json_dict() for a in corpus.articles],
        }

    @app.get("/corpora/{corpus_id}/articles/{article_id}")
    def get_article(corpus_id: str, article_id: str):
        try:
            corpus = store.load_corpus(corpus_id)
        except KeyError:
            return _error(404, "not_found", detail=f"unknown corpus {corpus_id!r}")
        article = corpus.get(article_id)
        if article is None:
            return _error(404, "not_found", detail=f"unknown article {article_id!r}")
        return article.to_json_dict()

    @app.post("/corpora/{corpus_id}/analyses")
    async def analyze(corpus_id: str, request: Request):
        try:
            corpus = store.load_corpus(corpus_id)
        except KeyError:
            return _error(404, "not_found", detail=f"unknown corpus {corpus_id!r}")
        try:
            doc = await request.json()
        except Exception:
            return _error(400, "malformed_input", detail="body must be JSON")
        try:
            config = AnalysisConfig.from_json_dict(doc)
        except (ValueError, TypeError) as exc:
            return _error(422, "invalid_config", detail=str(exc))
        try:
            matrix = run_analysis(corpus, config)
        except CorpusTooSmall as exc:
            return _error(422, "corpus_too_small", detail=str(exc))
        analysis_id = store.save_analysis(
            {
                "corpus_id": corpus_id,
                "created_at": datetime.now(timezone.utc).isoformat(),
                "config": config.to_json_dict(),
                "matrix": matrix.to_json_dict(),
            }
        )
        return JSONResponse(status_code=201, content={"analysis_id": analysis_id, "corpus_id": corpus_id})

    @app.get("/analyses/{analysis_id}/matrix")
    def get_matrix(analysis_id: str):
        try:
            record = store.load_analysis(analysis_id)
        except KeyError:
            return _error(404, "not_found", detail=f"unknown analysis {analysis_id!r}")
        return record["matrix"]

    @app.get("/analyses/{analysis_id}/layout")
    def get_layout(
        analysis_id: str,
        threshold: float | None = None,
        time_axis: str | None = None,
        width: float | None = None,
        height: float | None = None,
    ):
        try:
            record = store.load_analysis(analysis_id)
        except KeyError:
            return _error(404, "not_found", detail=f"unknown analysis {analysis_id!r}")
        try:
            corpus = store.load_corpus(record["corpus_id"])
        except KeyError:
            return _error(404, "not_found", detail=f"corpus {record['corpus_id']!r} is gone")

        overrides = {
            key: value
            for key, value in {
                "threshold": threshold, "time_axis": time_axis, "width": width, "height": height,
            }.items()
            if value is not None
        }
        try:
            config = replace(LayoutConfig.from_json_dict(record["config"]["layout"]), **overrides)
        except ValueError as exc:
            return _error(422, "invalid_override", detail=str(exc))
        matrix = SimilarityMatrix.from_json_dict(record["matrix"])
        layout = run_tfd_layout(matrix, corpus, config)
        return layout_to_json_dict(layout, matrix)

    return app
