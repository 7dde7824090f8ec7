import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsdeps.corpus import parse_article_json
from newsdeps.errors import CorpusTooSmall, EmptyMatrix
from newsdeps.similarity import (
    MeasureParams,
    SimilarityMatrix,
    TokenStream,
    build_d2d_matrix,
    fnv1a_64,
    gst_score,
    gst_tiles,
    jaccard,
    normalize_matrix,
    sherlock_score,
    sherlock_signatures,
    tfidf_cosine,
    tokenize,
)
from oracles import fnv1a_64_oracle, greedy_tiles_oracle


def stream(*tokens):
    return TokenStream(tuple(tokens))


def article(aid, ts, title="Title", text="Body."):
    return {"id": aid, "publisher": "P", "title": title, "main_text": text, "published_at": ts}


# ------------------------------------------------------------- tokenize ----

def test_tokenize_splits_on_nonalnum():
    assert tokenize("Russia's tanks, near!").tokens == ("russia", "s", "tanks", "near")


def test_tokenize_empty():
    assert tokenize("").tokens == ()


def test_tokenize_hyphens_duplicates_order():
    assert tokenize("Ukraine-crisis 2014 Ukraine").tokens == ("ukraine", "crisis", "2014", "ukraine")


@given(st.text(max_size=200))
def test_tokenize_tokens_are_lowercase_alnum(text):
    for token in tokenize(text).tokens:
        assert token
        assert token == token.lower()
        assert all(ch.isalnum() for ch in token)


def test_tokenize_underscore_is_a_separator():
    assert tokenize("snake_case_words").tokens == ("snake", "case", "words")


# -------------------------------------------------------------- jaccard ----

def test_jaccard_identity_and_disjoint():
    a = stream("over", "the", "strait")
    assert jaccard(a, a) == 1.0
    assert jaccard(a, stream("totally", "different", "words")) == 0.0
    assert jaccard(stream(), stream()) == 0.0


def test_jaccard_hand_oracle():
    # {a,b,c} vs {b,c,d}: intersection {b,c}, union {a,b,c,d}
    assert jaccard(stream("a", "b", "c"), stream("b", "c", "d")) == 0.5


@given(
    st.lists(st.sampled_from("abcdefgh"), max_size=12),
    st.lists(st.sampled_from("abcdefgh"), max_size=12),
)
def test_jaccard_symmetric_and_bounded(ta, tb):
    a, b = stream(*ta), stream(*tb)
    assert jaccard(a, b) == jaccard(b, a)
    assert 0.0 <= jaccard(a, b) <= 1.0


# ---------------------------------------------------------------- tfidf ----

def test_tfidf_identical_documents_score_exactly_one():
    docs = [stream("alpha", "beta", "alpha"), stream("alpha", "beta", "alpha")]
    assert tfidf_cosine(docs, 0, 1) == 1.0


def test_tfidf_disjoint_documents_score_zero():
    docs = [stream("alpha", "beta"), stream("gamma", "delta"), stream("gamma", "gamma")]
    assert tfidf_cosine(docs, 0, 1) == 0.0


def test_tfidf_three_doc_hand_oracle():
    # d1="a b", d2="a c", d3="c c"; df: a=2, b=1, c=2; idf = 1 + ln(3/df).
    # Hand computation (straight arithmetic, no shared code):
    idf_a, idf_b, idf_c = 1 + math.log(3 / 2), 1 + math.log(3 / 1), 1 + math.log(3 / 2)
    dot = idf_a * idf_a
    expected = dot / (math.sqrt(idf_a**2 + idf_b**2) * math.sqrt(idf_a**2 + idf_c**2))
    assert expected == pytest.approx(0.3934699365949511, abs=1e-12)

    docs = [stream("a", "b"), stream("a", "c"), stream("c", "c")]
    assert tfidf_cosine(docs, 0, 1) == pytest.approx(expected, abs=1e-9)


def test_tfidf_index_out_of_range():
    docs = [stream("a"), stream("b")]
    with pytest.raises(IndexError):
        tfidf_cosine(docs, 0, 2)


# ------------------------------------------------------------- sherlock ----

def test_fnv1a_64_published_vectors():
    assert fnv1a_64(b"") == 0xCBF29CE484222325
    assert fnv1a_64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a_64(b"foobar") == 0x85944171F73967E8


@given(st.binary(max_size=64))
def test_fnv1a_64_matches_independent_arithmetic(data):
    assert fnv1a_64(data) == fnv1a_64_oracle(data)


def test_signatures_zerobits_zero_keeps_every_window():
    s = stream("one", "two", "three", "four", "five")
    sigs = sherlock_signatures(s, MeasureParams(sherlock_zerobits=0))
    assert len(sigs) == 3  # 5 - 3 + 1 windows, all distinct


def test_signatures_stream_shorter_than_ngram():
    assert sherlock_signatures(stream("one", "two"), MeasureParams()) == frozenset()


def test_signatures_culling_fraction_on_fixed_stream():
    # fixed 200-token pseudorandom stream; brute-force every window with the
    # independent hash and keep those with 3 trailing zero bits
    rng = random.Random(0)
    tokens = [f"tok{rng.randrange(5000)}" for _ in range(200)]
    expected = set()
    for start in range(198):
        h = fnv1a_64_oracle(" ".join(tokens[start:start + 3]).encode())
        if h & 0b111 == 0:
            expected.add(h)
    sigs = sherlock_signatures(stream(*tokens), MeasureParams())
    assert sigs == expected
    assert 1 / 16 <= len(sigs) / 198 <= 1 / 4


def test_sherlock_score_identity_disjoint_empty():
    s = stream(*(f"w{i}" for i in range(40)))
    sig = sherlock_signatures(s, MeasureParams(sherlock_zerobits=0))
    assert sherlock_score(sig, sig) == 1.0
    other = sherlock_signatures(stream(*(f"x{i}" for i in range(40))), MeasureParams(sherlock_zerobits=0))
    assert sherlock_score(sig, other) == 0.0
    assert sherlock_score(frozenset(), frozenset()) == 0.0


def test_sherlock_partial_rewrite_scores_strictly_between():
    rng = random.Random(3)
    base = [f"w{rng.randrange(300)}" for _ in range(120)]
    edited = base[:80] + [f"new{i}" for i in range(40)]
    params = MeasureParams(sherlock_zerobits=0)
    score = sherlock_score(
        sherlock_signatures(stream(*base), params),
        sherlock_signatures(stream(*edited), params),
    )
    assert 0.0 < score < 1.0


def test_measure_params_validation():
    with pytest.raises(ValueError):
        MeasureParams(sherlock_ngram=0)
    with pytest.raises(ValueError):
        MeasureParams(sherlock_zerobits=17)
    with pytest.raises(ValueError):
        MeasureParams(gst_min_match=0)


# ------------------------------------------------------------------ gst ----

def test_gst_identical_streams_single_tile():
    tokens = tuple(f"w{i}" for i in range(20))
    tiles = gst_tiles(TokenStream(tokens), TokenStream(tokens), 7)
    assert tiles == frozenset({(0, 0, 20)})


def test_gst_no_common_run_long_enough():
    a = stream(*(f"a{i}" for i in range(10)))
    b = stream(*(f"b{i}" for i in range(10)))
    assert gst_tiles(a, b, 7) == frozenset()


def test_gst_block_permutation_three_tiles():
    # a = XYZ, b = YXZ with distinct 8-token blocks: three tiles of length 8
    X = [f"x{i}" for i in range(8)]
    Y = [f"y{i}" for i in range(8)]
    Z = [f"z{i}" for i in range(8)]
    a, b = stream(*X, *Y, *Z), stream(*Y, *X, *Z)
    tiles = gst_tiles(a, b, 7)
    assert sorted(length for _, _, length in tiles) == [8, 8, 8]
    assert sum(length for _, _, length in tiles) == 24
    assert tiles == frozenset(greedy_tiles_oracle(list(a.tokens), list(b.tokens), 7))


def test_gst_tiebreak_prefers_smallest_start_a_then_b():
    # the length-3 run appears twice in a; greedy must tile the earlier one
    a = stream("x", "y", "z", "q", "x", "y", "z")
    b = stream("x", "y", "z")
    assert gst_tiles(a, b, 3) == frozenset({(0, 0, 3)})
    # two equal candidates in b; smallest start_b wins
    c = stream("x", "y", "z")
    d = stream("x", "y", "z", "q", "x", "y", "z")
    assert gst_tiles(c, d, 3) == frozenset({(0, 0, 3)})


def test_gst_tiles_never_overlap_within_a_stream():
    rng = random.Random(11)
    for _ in range(50):
        a = [f"w{rng.randrange(4)}" for _ in range(rng.randrange(31))]
        b = [f"w{rng.randrange(4)}" for _ in range(rng.randrange(31))]
        tiles = gst_tiles(stream(*a), stream(*b), 2)
        seen_a, seen_b = set(), set()
        for sa, sb, length in tiles:
            span_a = set(range(sa, sa + length))
            span_b = set(range(sb, sb + length))
            assert not (span_a & seen_a) and not (span_b & seen_b)
            seen_a |= span_a
            seen_b |= span_b


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.sampled_from("abcd"), max_size=30),
    st.lists(st.sampled_from("abcd"), max_size=30),
    st.integers(min_value=1, max_value=5),
)
def test_gst_matches_bruteforce_oracle(a, b, min_match):
    impl = gst_tiles(stream(*a), stream(*b), min_match)
    assert impl == frozenset(greedy_tiles_oracle(a, b, min_match))


def test_gst_min_match_validation():
    with pytest.raises(ValueError):
        gst_tiles(stream("a"), stream("a"), 0)


def test_gst_score_arithmetic():
    assert gst_score({(0, 0, 24)}, 24, 24) == 1.0
    assert gst_score(set(), 10, 10) == 0.0
    assert gst_score({(0, 0, 16)}, 24, 24) == pytest.approx(2 * 16 / 48)
    assert gst_score(set(), 0, 0) == 0.0


# ------------------------------------------------- cross-measure checks ----

def _degradation_docs():
    rng = random.Random(5)
    paragraphs = [[f"p{p}w{rng.randrange(200)}" for _ in range(12)] for p in range(8)]
    def doc(replaced, tag):
        parts = []
        for p, para in enumerate(paragraphs):
            if p >= 8 - replaced:
                parts.extend(f"{tag}r{p}t{t}" for t in range(12))
            else:
                parts.extend(para)
        return stream(*parts)
    base = doc(0, "x")
    return base, [doc(0, "v0"), doc(2, "v25"), doc(4, "v50"), doc(8, "v100")]


def test_monotonic_degradation_gst_and_jaccard():
    base, variants = _degradation_docs()
    gst_scores = [
        gst_score(gst_tiles(base, v, 7), len(base), len(v)) for v in variants
    ]
    jac_scores = [jaccard(base, v) for v in variants]
    assert gst_scores[0] == 1.0 and jac_scores[0] == 1.0
    assert all(x >= y for x, y in zip(gst_scores, gst_scores[1:]))
    assert all(x >= y for x, y in zip(jac_scores, jac_scores[1:]))


def test_identical_analyzed_texts_score_one_under_every_measure():
    docs = json.dumps([
        article("a", "2014-11-11T08:00:00Z", text="Same body text for both articles."),
        article("b", "2014-11-11T09:00:00Z", text="Same body text for both articles."),
    ]).encode()
    corpus = parse_article_json(docs)
    for measure in ("tfidf_cosine", "jaccard", "sherlock", "gst"):
        params = MeasureParams(sherlock_zerobits=0, gst_min_match=1)
        m = build_d2d_matrix(corpus, measure, params)
        assert m.entries[(0, 1)] == 1.0, measure


def test_symmetry_of_set_and_vector_measures():
    rng = random.Random(9)
    for _ in range(30):
        a = stream(*(f"w{rng.randrange(12)}" for _ in range(rng.randrange(1, 40))))
        b = stream(*(f"w{rng.randrange(12)}" for _ in range(rng.randrange(1, 40))))
        assert jaccard(a, b) == jaccard(b, a)
        params = MeasureParams(sherlock_zerobits=0)
        assert sherlock_score(
            sherlock_signatures(a, params), sherlock_signatures(b, params)
        ) == sherlock_score(sherlock_signatures(b, params), sherlock_signatures(a, params))
        docs = [a, b]
        assert tfidf_cosine(docs, 0, 1) == tfidf_cosine(docs, 1, 0)


# --------------------------------------------------------------- matrix ----

def test_matrix_k3_jaccard_entry_count():
    corpus = parse_article_json(json.dumps([
        article("a", "2014-11-11T08:00:00Z"),
        article("b", "2014-11-11T09:00:00Z"),
        article("c", "2014-11-11T10:00:00Z"),
    ]).encode())
    m = build_d2d_matrix(corpus, "jaccard")
    assert set(m.entries) == {(0, 1), (0, 2), (1, 2)}
    assert m.measure == "jaccard" and m.normalized is False


def test_matrix_equal_timestamps_no_entries_plus_warning():
    corpus = parse_article_json(json.dumps([
        article("a", "2014-11-11T08:00:00Z"),
        article("b", "2014-11-11T08:00:00Z"),
    ]).encode())
    m = build_d2d_matrix(corpus, "gst")
    assert m.entries == {}
    assert len(corpus.warnings) == 1


def test_matrix_requires_two_articles():
    corpus = parse_article_json(json.dumps([article("a", "2014-11-11T08:00:00Z")]).encode())
    with pytest.raises(CorpusTooSmall):
        build_d2d_matrix(corpus, "jaccard")


def test_matrix_unknown_measure():
    corpus = parse_article_json(json.dumps([
        article("a", "2014-11-11T08:00:00Z"),
        article("b", "2014-11-11T09:00:00Z"),
    ]).encode())
    with pytest.raises(ValueError, match="tfidf_cosine"):
        build_d2d_matrix(corpus, "bogus")


def test_gst_argmax_is_copy_edit_pair(copy_edit_corpus):
    m = build_d2d_matrix(copy_edit_corpus, "gst")
    assert len(m.entries) == 15
    best = max(m.entries, key=m.entries.get)
    assert best == (3, 4)
    others = [s for key, s in m.entries.items() if key != best]
    assert all(s < m.entries[best] for s in others)


def test_matrix_title_contributes_to_analyzed_text():
    corpus = parse_article_json(json.dumps([
        article("a", "2014-11-11T08:00:00Z", title="unique alpha title", text="first body words"),
        article("b", "2014-11-11T09:00:00Z", title="unique alpha title", text="second body tokens"),
    ]).encode())
    # bodies are token-disjoint; the shared title is the only overlap
    assert build_d2d_matrix(corpus, "jaccard").entries[(0, 1)] > 0.0


def test_matrix_scores_in_unit_interval(copy_edit_corpus):
    for measure in ("tfidf_cosine", "jaccard", "sherlock", "gst"):
        m = build_d2d_matrix(copy_edit_corpus, measure)
        for (i, j), s in m.entries.items():
            assert i < j
            assert 0.0 <= s <= 1.0


def test_matrix_determinism_bit_identical(copy_edit_corpus):
    for measure in ("tfidf_cosine", "jaccard", "sherlock", "gst"):
        m1 = build_d2d_matrix(copy_edit_corpus, measure)
        m2 = build_d2d_matrix(copy_edit_corpus, measure)
        assert m1.entries == m2.entries  # float equality, not approx


def test_matrix_json_roundtrip(copy_edit_corpus):
    m = build_d2d_matrix(copy_edit_corpus, "gst")
    doc = m.to_json_dict()
    back = SimilarityMatrix.from_json_dict(doc)
    assert back.article_ids == m.article_ids
    assert back.measure == m.measure
    assert set(back.entries) == set(m.entries)
    assert back.to_json_dict() == doc


# ------------------------------------------------------------- normalize ----

def _matrix(values):
    entries = {(0, i + 1): v for i, v in enumerate(values)}
    ids = tuple(f"a{i}" for i in range(len(values) + 1))
    return SimilarityMatrix(article_ids=ids, entries=entries, measure="jaccard")


def test_normalize_affine_endpoints():
    m = normalize_matrix(_matrix([0.2, 0.5, 0.8]))
    assert sorted(m.entries.values()) == pytest.approx([0.0, 0.5, 1.0])
    assert min(m.entries.values()) == 0.0
    assert max(m.entries.values()) == 1.0
    assert m.normalized is True


def test_normalize_constant_matrix_unchanged():
    m = normalize_matrix(_matrix([0.4, 0.4, 0.4]))
    assert list(m.entries.values()) == [0.4, 0.4, 0.4]
    assert m.normalized is True


def test_normalize_single_entry_unchanged():
    m = normalize_matrix(_matrix([0.7]))
    assert list(m.entries.values()) == [0.7]


def test_normalize_idempotent():
    rng = random.Random(21)
    values = [rng.random() for _ in range(9)]
    once = normalize_matrix(_matrix(values))
    twice = normalize_matrix(once)
    assert once.entries == twice.entries


def test_normalize_empty_matrix_raises():
    empty = SimilarityMatrix(article_ids=("a", "b"), entries={}, measure="gst")
    with pytest.raises(EmptyMatrix):
        normalize_matrix(empty)
