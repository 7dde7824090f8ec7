"""Tokenization and the four article-to-article similarity measures.

Two plain text measures (TF-IDF & cosine, Jaccard) group articles by topic;
two plagiarism-style measures (n-gram fingerprint overlap, greedy string
tiling) estimate how likely one article copied text from another. All four
score a pair of token streams into [0, 1] and feed the pairwise matrix kept
over the chronologically ordered corpus.
"""

from __future__ import annotations

import math
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, replace
from typing import ClassVar, Iterable, Sequence

import numpy as np

from .corpus import Corpus, chronological_pairs
from .errors import CorpusTooSmall, EmptyMatrix

MEASURES = ("tfidf_cosine", "jaccard", "sherlock", "gst")

_TOKEN_RE = re.compile(r"[^\W_]+")

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_U64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class TokenStream:
    """Normalized word tokens in source order."""

    tokens: tuple[str, ...]
    source_article: str = ""

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class MeasureParams:
    """Tunables for the fingerprint and tiling measures."""

    sherlock_ngram: int = 3
    sherlock_zerobits: int = 3
    gst_min_match: int = 7

    # idf smoothing scheme is fixed, not tunable: plain ln(k/df) zeroes out
    # terms shared by every document, which breaks identical-document pairs
    # in tiny corpora.
    IDF_SMOOTHING: ClassVar[str] = "1 + ln(k/df)"

    def __post_init__(self) -> None:
        if self.sherlock_ngram < 1:
            raise ValueError("sherlock_ngram must be >= 1")
        if not 0 <= self.sherlock_zerobits <= 16:
            raise ValueError("sherlock_zerobits must be in [0, 16]")
        if self.gst_min_match < 1:
            raise ValueError("gst_min_match must be >= 1")


def tokenize(text: str, source_article: str = "") -> TokenStream:
    """Lowercase NFC-normalized words, split on non-alphanumeric runs."""
    normalized = unicodedata.normalize("NFC", text).lower()
    return TokenStream(tuple(_TOKEN_RE.findall(normalized)), source_article)


# ---------------------------------------------------------------------------
# Jaccard and TF-IDF & cosine
# ---------------------------------------------------------------------------

def jaccard(a: TokenStream, b: TokenStream) -> float:
    """Set overlap of the two vocabularies; both empty scores 0."""
    set_a, set_b = set(a.tokens), set(b.tokens)
    union = len(set_a | set_b)
    if union == 0:
        return 0.0
    return len(set_a & set_b) / union


def _tfidf_weights(corpus_tokens: Sequence[TokenStream]) -> list[dict[str, float]]:
    """Per-document term weights: raw tf times (1 + ln(k/df))."""
    k = len(corpus_tokens)
    df: Counter[str] = Counter()
    counts = []
    for stream in corpus_tokens:
        tf = Counter(stream.tokens)
        counts.append(tf)
        df.update(tf.keys())
    weights = []
    for tf in counts:
        weights.append({term: count * (1.0 + math.log(k / df[term])) for term, count in tf.items()})
    return weights


def _cosine(wa: dict[str, float], wb: dict[str, float]) -> float:
    # squared norms: for identical vectors dot == na2 == nb2 and
    # sqrt(x*x) == x in binary64, so the ratio is exactly 1.0
    na2 = sum(w * w for w in wa.values())
    nb2 = sum(w * w for w in wb.values())
    if na2 == 0.0 or nb2 == 0.0:
        return 0.0
    if len(wb) < len(wa):
        wa, wb = wb, wa
    dot = sum(w * wb[term] for term, w in wa.items() if term in wb)
    return min(dot / math.sqrt(na2 * nb2), 1.0)


def tfidf_cosine(corpus_tokens: Sequence[TokenStream], i: int, j: int) -> float:
    """Cosine of the TF-IDF vectors of documents i and j over the corpus."""
    k = len(corpus_tokens)
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"document index out of range for corpus of size {k}")
    weights = _tfidf_weights(corpus_tokens)
    return _cosine(weights[i], weights[j])


# ---------------------------------------------------------------------------
# Fingerprint measure (Sherlock-style n-gram signatures)
# ---------------------------------------------------------------------------

def fnv1a_64(data: bytes) -> int:
    """FNV-1a 64-bit hash, bit-exact so signature sets are portable."""
    h = FNV64_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV64_PRIME) & _U64_MASK
    return h


def sherlock_signatures(a: TokenStream, params: MeasureParams) -> frozenset[int]:
    """Hash every n-gram window and keep those whose low bits are all zero.

    Keeping only hashes with ``sherlock_zerobits`` trailing zero bits thins
    the fingerprint to an expected 2**-zerobits fraction of all windows.
    """
    n = params.sherlock_ngram
    tokens = a.tokens
    if len(tokens) < n:
        return frozenset()
    mask = (1 << params.sherlock_zerobits) - 1
    kept = set()
    for start in range(len(tokens) - n + 1):
        h = fnv1a_64(" ".join(tokens[start:start + n]).encode("utf-8"))
        if h & mask == 0:
            kept.add(h)
    return frozenset(kept)


def sherlock_score(sig_a: frozenset[int], sig_b: frozenset[int]) -> float:
    """Jaccard overlap of two signature sets; both empty scores 0."""
    union = len(sig_a | sig_b)
    if union == 0:
        return 0.0
    return len(sig_a & sig_b) / union


# ---------------------------------------------------------------------------
# Greedy string tiling (the JPlag core algorithm)
# ---------------------------------------------------------------------------

def _longest_unmarked_run(
    a_ids: np.ndarray,
    b_ids: np.ndarray,
    a_unmarked: np.ndarray,
    b_unmarked: np.ndarray,
) -> tuple[int, int, int]:
    """Longest common token run over unmarked positions of both streams.

    Returns (length, start_a, start_b); ties resolved to the smallest
    start_a, then the smallest start_b. Row-by-row suffix-length recurrence:
    the first row reaching the eventual maximum gives the smallest end in a,
    and argmax picks the smallest end in b within that row.
    """
    nb = len(b_ids)
    prev = np.zeros(nb, dtype=np.int32)
    cur = np.zeros(nb, dtype=np.int32)
    best_len, best_end_a, best_end_b = 0, -1, -1
    for i in range(len(a_ids)):
        if not a_unmarked[i]:
            prev[:] = 0
            continue
        eq = (b_ids == a_ids[i]) & b_unmarked
        cur[:] = 0
        cur[eq] = 1
        follow = eq[1:]
        cur[1:][follow] += prev[:-1][follow]
        row_max = int(cur.max()) if nb else 0
        if row_max > best_len:
            best_len = row_max
            best_end_a = i
            best_end_b = int(np.argmax(cur))
        prev, cur = cur, prev
    if best_len == 0:
        return 0, -1, -1
    return best_len, best_end_a - best_len + 1, best_end_b - best_len + 1


def gst_tiles(a: TokenStream, b: TokenStream, min_match: int) -> frozenset[tuple[int, int, int]]:
    """Greedy string tiling: non-overlapping maximal common runs.

    Repeatedly takes the longest common contiguous run of unmarked tokens
    (ties: smallest start_a, then start_b), marks it in both streams as a
    tile (start_a, start_b, length), and stops once no run reaches
    ``min_match`` tokens.
    """
    if min_match < 1:
        raise ValueError("min_match must be >= 1")
    if not a.tokens or not b.tokens:
        return frozenset()

    vocab: dict[str, int] = {}
    a_ids = np.fromiter((vocab.setdefault(t, len(vocab)) for t in a.tokens), np.int64, len(a.tokens))
    b_ids = np.fromiter((vocab.setdefault(t, len(vocab)) for t in b.tokens), np.int64, len(b.tokens))
    a_unmarked = np.ones(len(a_ids), dtype=bool)
    b_unmarked = np.ones(len(b_ids), dtype=bool)

    tiles = []
    while True:
        length, start_a, start_b = _longest_unmarked_run(a_ids, b_ids, a_unmarked, b_unmarked)
        if length < min_match:
            break
        tiles.append((start_a, start_b, length))
        a_unmarked[start_a:start_a + length] = False
        b_unmarked[start_b:start_b + length] = False
    return frozenset(tiles)


def gst_score(tiles: Iterable[tuple[int, int, int]], len_a: int, len_b: int) -> float:
    """JPlag similarity: twice the tiled coverage over the combined length."""
    if len_a + len_b == 0:
        return 0.0
    coverage = sum(length for _, _, length in tiles)
    return 2.0 * coverage / (len_a + len_b)


# ---------------------------------------------------------------------------
# Pairwise matrix over the chronological corpus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise scores for chronologically ordered article pairs.

    Entries exist only for (i, j) with i < j in chronological order and a
    strictly earlier publication instant, i.e. the upper triangle in time.
    """

    article_ids: tuple[str, ...]
    entries: dict[tuple[int, int], float]
    measure: str
    normalized: bool = False

    @property
    def k(self) -> int:
        return len(self.article_ids)

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure,
            "normalized": self.normalized,
            "article_ids": list(self.article_ids),
            "entries": [
                {"i": i, "j": j, "s": round(self.entries[(i, j)], 9)}
                for i, j in sorted(self.entries)
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SimilarityMatrix":
        return cls(
            article_ids=tuple(doc["article_ids"]),
            entries={(e["i"], e["j"]): float(e["s"]) for e in doc["entries"]},
            measure=doc["measure"],
            normalized=bool(doc["normalized"]),
        )


def analyzed_text(title: str, main_text: str) -> str:
    """The text a measure sees: the title contributes to observed reuse."""
    return f"{title}\n{main_text}"


def build_d2d_matrix(corpus: Corpus, measure: str, params: MeasureParams | None = None) -> SimilarityMatrix:
    """Score every chronologically ordered article pair with one measure.

    Pairs sharing a publication instant get no entry; their direction is
    undeterminable. Scores are raw (unnormalized).
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}")
    if corpus.k < 2:
        raise CorpusTooSmall(f"need at least 2 articles, got {corpus.k}")
    params = params or MeasureParams()

    ordered = corpus.in_time_order()
    streams = [tokenize(analyzed_text(a.title, a.main_text), source_article=a.id) for a in ordered]
    pairs = list(chronological_pairs(corpus))

    entries: dict[tuple[int, int], float] = {}
    if measure == "jaccard":
        for i, j in pairs:
            entries[(i, j)] = jaccard(streams[i], streams[j])
    elif measure == "tfidf_cosine":
        weights = _tfidf_weights(streams)
        for i, j in pairs:
            entries[(i, j)] = _cosine(weights[i], weights[j])
    elif measure == "sherlock":
        sigs = [sherlock_signatures(s, params) for s in streams]
        for i, j in pairs:
            entries[(i, j)] = sherlock_score(sigs[i], sigs[j])
    else:  # gst
        for i, j in pairs:
            tiles = gst_tiles(streams[i], streams[j], params.gst_min_match)
            entries[(i, j)] = gst_score(tiles, len(streams[i]), len(streams[j]))

    return SimilarityMatrix(
        article_ids=tuple(a.id for a in ordered),
        entries=entries,
        measure=measure,
        normalized=False,
    )


def normalize_matrix(m: SimilarityMatrix) -> SimilarityMatrix:
    """Linearly rescale entries so the minimum is 0 and the maximum is 1.

    A constant matrix passes through unchanged: it carries no ranking signal
    and forcing an endpoint would fabricate one.
    """
    if not m.entries:
        raise EmptyMatrix("cannot normalize a matrix with no entries")
    values = m.entries.values()
    lo, hi = min(values), max(values)
    if hi > lo:
        span = hi - lo
        entries = {key: (s - lo) / span for key, s in m.entries.items()}
    else:
        entries = dict(m.entries)
    return replace(m, entries=entries, normalized=True)
