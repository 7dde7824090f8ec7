"""Command line entry points: batch analysis and the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import parse_article_json
from .errors import CorpusTooSmall, InvalidArticle, MalformedInput
from .layout import LayoutConfig, layout_to_json_dict, run_tfd_layout
from .similarity import SimilarityMatrix, build_d2d_matrix, normalize_matrix
from .service import canonical_measure, create_app


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; our contract reserves 2 for input
    # validation failures, so flag errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="newsdeps", description="News information reuse analysis")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = sub.add_parser("analyze", help="score an article file and write matrix + layout JSON")
    analyze.add_argument("--input", required=True, help="article JSON file")
    analyze.add_argument(
        "--measure", required=True, choices=["tfidf", "jaccard", "sherlock", "gst"],
        help="similarity measure",
    )
    analyze.add_argument("--threshold", type=float, default=0.1, help="edge similarity threshold")
    analyze.add_argument("--no-normalize", action="store_true", help="keep raw similarity values")
    analyze.add_argument("--seed", type=int, default=42, help="layout random seed")
    analyze.add_argument("--out", default=".", help="output directory")

    serve = sub.add_parser("serve", help="run the HTTP service until interrupted")
    serve.add_argument("--port", type=int, default=8787)
    serve.add_argument("--data", default=None, help="data directory (default: $NEWSDEPS_DATA)")
    return parser


def _fail(message: str) -> int:
    print(f"newsdeps: {message}", file=sys.stderr)
    return 2


def _run_analyze(args) -> int:
    path = Path(args.input)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        return _fail(f"cannot read {path}: {exc}")
    try:
        corpus = parse_article_json(raw)
    except (MalformedInput, InvalidArticle) as exc:
        return _fail(str(exc))

    try:
        config = LayoutConfig(threshold=args.threshold, seed=args.seed)
    except ValueError as exc:
        return _fail(str(exc))
    try:
        matrix = build_d2d_matrix(corpus, canonical_measure(args.measure))
    except CorpusTooSmall as exc:
        return _fail(str(exc))
    if not args.no_normalize and matrix.entries:
        matrix = normalize_matrix(matrix)

    matrix_doc = matrix.to_json_dict()
    # the layout consumes the exported matrix (scores rounded to 9 digits),
    # exactly like a layout served from a persisted analysis
    layout_matrix = SimilarityMatrix.from_json_dict(matrix_doc)
    layout = run_tfd_layout(layout_matrix, corpus, config)
    layout_doc = layout_to_json_dict(layout, layout_matrix)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, doc in (("matrix.json", matrix_doc), ("layout.json", layout_doc)):
        (out_dir / name).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {out_dir / name}")
    return 0


def _run_serve(args) -> int:
    import uvicorn

    app = create_app(data_dir=args.data)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze":
        return _run_analyze(args)
    return _run_serve(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
