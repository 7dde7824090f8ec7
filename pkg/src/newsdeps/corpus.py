"""Article ingestion: JSON import, validation, and chronological indexing.

Articles arrive as a JSON array (schema below) or are built programmatically.
A corpus keeps the articles in their input order plus a permutation that
sorts them by publication time; every downstream stage works on that
chronological view.

Article JSON schema (array of objects):
    required: "publisher", "title", "main_text", "published_at" (RFC 3339)
    optional: "id", "url", "image_url", "color" ("#RRGGBB")
Unknown keys are preserved verbatim on round-trip.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Iterator, Sequence
from urllib.parse import urlparse

from .errors import InvalidArticle, MalformedInput

REQUIRED_FIELDS = ("publisher", "title", "main_text", "published_at")
OPTIONAL_FIELDS = ("id", "url", "image_url", "color")

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")
_PARAGRAPH_SPLIT = re.compile(r"\n\s*\n")


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 timestamp; the UTC offset is mandatory.

    Raises ValueError for anything unparseable or without an offset.
    """
    text = value.strip()
    # datetime.fromisoformat on 3.10 does not accept a trailing 'Z'
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp {value!r} has no UTC offset")
    return parsed


def split_paragraphs(text: str) -> list[str]:
    """Split a body into paragraphs on blank lines, dropping empty ones."""
    return [p.strip() for p in _PARAGRAPH_SPLIT.split(text.strip()) if p.strip()]


@dataclass(frozen=True)
class Article:
    """One news document with validated required fields.

    ``published_at_raw`` keeps the original timestamp string so that
    serialization reproduces the input byte-for-byte.
    """

    id: str
    publisher: str
    title: str
    main_text: str
    published_at: datetime
    published_at_raw: str
    url: str | None = None
    image_url: str | None = None
    color: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def lead_paragraph(self) -> str:
        """First paragraph of the body."""
        paragraphs = split_paragraphs(self.main_text)
        return paragraphs[0] if paragraphs else ""

    def to_json_dict(self) -> dict:
        doc: dict[str, Any] = {
            "id": self.id,
            "publisher": self.publisher,
            "title": self.title,
            "main_text": self.main_text,
            "published_at": self.published_at_raw,
        }
        for key in ("url", "image_url", "color"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        doc.update(self.extra)
        return doc


@dataclass(frozen=True)
class Corpus:
    """Validated set of articles plus their chronological ordering.

    Immutable after construction; safe to share across threads.
    """

    articles: tuple[Article, ...]
    order: tuple[int, ...]
    warnings: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.articles)

    def in_time_order(self) -> tuple[Article, ...]:
        return tuple(self.articles[i] for i in self.order)

    def ids_in_time_order(self) -> tuple[str, ...]:
        return tuple(self.articles[i].id for i in self.order)

    def get(self, article_id: str) -> Article | None:
        for article in self.articles:
            if article.id == article_id:
                return article
        return None


def _is_absolute_url(value: str) -> bool:
    parts = urlparse(value)
    return bool(parts.scheme) and bool(parts.netloc)


def _article_from_dict(doc: Any, index: int) -> Article:
    if not isinstance(doc, dict):
        raise InvalidArticle(index, "article", f"article {index}: not a JSON object")

    values: dict[str, str] = {}
    for name in ("publisher", "title", "main_text"):
        value = doc.get(name)
        if not isinstance(value, str) or not value.strip():
            raise InvalidArticle(index, name)
        values[name] = value

    raw_ts = doc.get("published_at")
    if not isinstance(raw_ts, str) or not raw_ts.strip():
        raise InvalidArticle(index, "published_at")
    try:
        published_at = parse_rfc3339(raw_ts)
    except ValueError as exc:
        raise InvalidArticle(index, "published_at", f"article {index}: {exc}") from exc

    article_id = doc.get("id")
    if article_id is None:
        article_id = f"{values['publisher']}-{raw_ts}-{index}"
    elif not isinstance(article_id, str) or not article_id.strip():
        raise InvalidArticle(index, "id")

    optional: dict[str, str | None] = {"url": None, "image_url": None, "color": None}
    for name in ("url", "image_url"):
        value = doc.get(name)
        if value is not None:
            if not isinstance(value, str) or not _is_absolute_url(value):
                raise InvalidArticle(index, name, f"article {index}: '{name}' is not an absolute URL")
            optional[name] = value
    color = doc.get("color")
    if color is not None:
        if not isinstance(color, str) or not _COLOR_RE.match(color):
            raise InvalidArticle(index, "color", f"article {index}: 'color' is not '#RRGGBB'")
        optional["color"] = color

    known = set(REQUIRED_FIELDS) | set(OPTIONAL_FIELDS)
    extra = {key: value for key, value in doc.items() if key not in known}

    return Article(
        id=article_id,
        publisher=values["publisher"],
        title=values["title"],
        main_text=values["main_text"],
        published_at=published_at,
        published_at_raw=raw_ts,
        url=optional["url"],
        image_url=optional["image_url"],
        color=optional["color"],
        extra=extra,
    )


def build_corpus(articles: Sequence[Article]) -> Corpus:
    """Index a validated article list chronologically.

    Duplicate ids fail the whole build; pairs of articles that share a
    publication instant are recorded as warnings because no dependency
    direction can be assumed between them.
    """
    seen: set[str] = set()
    for index, article in enumerate(articles):
        if article.id in seen:
            raise InvalidArticle(index, "id", f"article {index}: duplicate id '{article.id}'")
        seen.add(article.id)

    order = tuple(sorted(range(len(articles)), key=lambda i: (articles[i].published_at, articles[i].id)))

    warnings: list[str] = []
    ordered = [articles[i] for i in order]
    for a_pos in range(len(ordered)):
        for b_pos in range(a_pos + 1, len(ordered)):
            earlier, later = ordered[a_pos], ordered[b_pos]
            if earlier.published_at != later.published_at:
                break  # ordered by time: later positions only move forward
            warnings.append(
                f"articles '{earlier.id}' and '{later.id}' share publication time "
                f"{earlier.published_at_raw}; no reuse direction is assumed between them"
            )

    return Corpus(articles=tuple(articles), order=order, warnings=tuple(warnings))


def parse_article_json(data: bytes | str) -> Corpus:
    """Parse an article JSON array into a corpus.

    Import is all-or-nothing: any invalid article fails the whole call so
    analyses never run on a silently truncated corpus.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise MalformedInput("input must be a JSON array of article objects")

    articles = [_article_from_dict(item, index) for index, item in enumerate(doc)]
    return build_corpus(articles)


def corpus_to_json(corpus: Corpus) -> str:
    """Serialize articles back to the import schema (round-trip stable)."""
    return json.dumps([a.to_json_dict() for a in corpus.articles], ensure_ascii=False, indent=2)


def chronological_pairs(corpus: Corpus) -> Iterator[tuple[int, int]]:
    """Yield (earlier, later) index pairs in chronological positions.

    Information can only flow forward in time, so only pairs with a strictly
    earlier publication instant qualify; ties are skipped entirely (their
    warnings are recorded on the corpus at construction).
    """
    ordered = corpus.in_time_order()
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            if ordered[i].published_at < ordered[j].published_at:
                yield (i, j)
