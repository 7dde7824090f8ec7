"""JSON-file persistence for corpora and analyses.

One document per id under the data directory; ids are fresh per POST so
records are never overwritten. Writes go through a temp file and an atomic
replace, which also serializes concurrent writers per path.
"""

from __future__ import annotations

import json
import os
import uuid
from pathlib import Path

from .corpus import Corpus, corpus_to_json, parse_article_json

DATA_ENV_VAR = "NEWSDEPS_DATA"
DEFAULT_DATA_DIR = "newsdeps_data"


def resolve_data_dir(data_dir: str | Path | None) -> Path:
    if data_dir is not None:
        return Path(data_dir)
    return Path(os.environ.get(DATA_ENV_VAR, DEFAULT_DATA_DIR))


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.corpora_dir = self.root / "corpora"
        self.analyses_dir = self.root / "analyses"
        self.corpora_dir.mkdir(parents=True, exist_ok=True)
        self.analyses_dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def new_id() -> str:
        return uuid.uuid4().hex[:12]

    @staticmethod
    def _write_atomic(path: Path, text: str) -> None:
        tmp = path.with_suffix(f".tmp-{uuid.uuid4().hex[:8]}")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)

    # corpora are persisted in the article import schema itself, so loading
    # is just a re-parse and round-trip stability carries the guarantees

    def save_corpus(self, corpus: Corpus) -> str:
        corpus_id = self.new_id()
        self._write_atomic(self.corpora_dir / f"{corpus_id}.json", corpus_to_json(corpus))
        return corpus_id

    def load_corpus(self, corpus_id: str) -> Corpus:
        if not corpus_id.isalnum():  # ids are hex; also blocks path tricks
            raise KeyError(corpus_id)
        path = self.corpora_dir / f"{corpus_id}.json"
        if not path.is_file():
            raise KeyError(corpus_id)
        return parse_article_json(path.read_bytes())

    def save_analysis(self, doc: dict) -> str:
        analysis_id = self.new_id()
        doc = dict(doc, analysis_id=analysis_id)
        self._write_atomic(self.analyses_dir / f"{analysis_id}.json", json.dumps(doc, ensure_ascii=False, indent=2))
        return analysis_id

    def load_analysis(self, analysis_id: str) -> dict:
        if not analysis_id.isalnum():
            raise KeyError(analysis_id)
        path = self.analyses_dir / f"{analysis_id}.json"
        if not path.is_file():
            raise KeyError(analysis_id)
        return json.loads(path.read_text(encoding="utf-8"))
