"""newsdeps: measure information reuse between news articles and lay them
out as a temporal force-directed graph."""

from .corpus import (
    Article,
    Corpus,
    build_corpus,
    chronological_pairs,
    corpus_to_json,
    parse_article_json,
)
from .extract import extract_from_html, registrable_domain
from .layout import (
    AxisIndication,
    LayoutConfig,
    LayoutEdge,
    LayoutNode,
    TFDLayout,
    auto_lod,
    edge_width,
    filter_edges,
    layout_energy,
    layout_to_json_dict,
    run_tfd_layout,
    time_axis_map,
)
from .service import AnalysisConfig, create_app, run_analysis
from .similarity import (
    MEASURES,
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

__version__ = "0.1.0"
