"""Best-effort article extraction from raw HTML.

A deliberately small stand-in for a full news crawler: it reads Open Graph
and article meta tags plus ``<p>`` text, which covers most mainstream news
pages well enough for URL import.

Field resolution, first hit wins:
    title        og:title meta, else <title>
    published_at article:published_time meta (RFC 3339), else failure
    publisher    og:site_name meta, else registrable domain of the page URL
    main_text    <p> elements inside <article>, else all <p> elements
    image_url    og:image meta (resolved against the page URL)
"""

from __future__ import annotations

import ipaddress
from html.parser import HTMLParser
from urllib.parse import urljoin, urlparse

from .corpus import Article, parse_rfc3339
from .errors import ParseFailure

# Common second-level public suffixes; enough for registrable-domain
# fallback without shipping the full public-suffix list.
_SECOND_LEVEL_SUFFIXES = frozenset({
    "co.uk", "org.uk", "ac.uk", "gov.uk", "net.uk", "me.uk", "ltd.uk", "plc.uk", "sch.uk",
    "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au", "id.au",
    "co.jp", "ne.jp", "or.jp", "ac.jp", "ad.jp", "go.jp",
    "co.nz", "org.nz", "net.nz", "govt.nz", "ac.nz",
    "co.kr", "or.kr", "ne.kr", "go.kr", "re.kr", "ac.kr",
    "com.br", "net.br", "org.br", "gov.br",
    "com.cn", "net.cn", "org.cn", "gov.cn",
    "com.tw", "org.tw", "net.tw",
    "com.sg", "net.sg", "org.sg", "edu.sg", "gov.sg",
    "co.in", "net.in", "org.in", "firm.in", "gen.in", "ind.in",
    "com.mx", "org.mx", "net.mx", "gob.mx",
    "com.ar", "com.tr", "net.tr", "org.tr", "gov.tr",
    "co.za", "org.za", "net.za", "web.za",
    "com.hk", "org.hk", "net.hk", "edu.hk", "gov.hk",
    "co.il", "org.il", "net.il", "ac.il", "gov.il",
    "com.my", "net.my", "org.my", "gov.my",
    "co.id", "or.id", "ac.id", "go.id", "web.id",
    "com.ua", "net.ua", "org.ua", "gov.ua",
    "com.pl", "net.pl", "org.pl", "edu.pl", "gov.pl",
})


def registrable_domain(url: str) -> str | None:
    """Return the registrable domain of a URL's host.

    ``https://news.example.co.uk/a`` -> ``example.co.uk``. IP addresses and
    single-label hosts are returned unchanged; None when there is no host.
    """
    host = urlparse(url).hostname
    if not host:
        return None
    host = host.strip(".").lower()
    try:
        ipaddress.ip_address(host)
        return host
    except ValueError:
        pass
    labels = host.split(".")
    if len(labels) < 2:
        return host
    if len(labels) >= 3 and ".".join(labels[-2:]) in _SECOND_LEVEL_SUFFIXES:
        return ".".join(labels[-3:])
    return ".".join(labels[-2:])


class _PageScan(HTMLParser):
    """Single pass collecting meta tags, <title>, and paragraph text."""

    _SKIP_TEXT_IN = {"script", "style", "noscript", "template"}

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.meta: dict[str, str] = {}
        self.title_text: list[str] = []
        self.article_paragraphs: list[str] = []
        self.all_paragraphs: list[str] = []
        self._in_title = False
        self._article_depth = 0
        self._skip_depth = 0
        self._paragraph: list[str] | None = None
        self._paragraph_in_article = False

    def handle_starttag(self, tag, attrs):
        if tag == "meta":
            attr = dict(attrs)
            key = attr.get("property") or attr.get("name")
            content = attr.get("content")
            if key and content is not None and key not in self.meta:
                self.meta[key] = content
        elif tag == "title":
            self._in_title = True
        elif tag == "article":
            self._article_depth += 1
        elif tag in self._SKIP_TEXT_IN:
            self._skip_depth += 1
        elif tag == "p":
            self._flush_paragraph()
            self._paragraph = []
            self._paragraph_in_article = self._article_depth > 0

    def handle_endtag(self, tag):
        if tag == "title":
            self._in_title = False
        elif tag == "article":
            self._article_depth = max(0, self._article_depth - 1)
        elif tag in self._SKIP_TEXT_IN:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag == "p":
            self._flush_paragraph()

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title_text.append(data)
        if self._paragraph is not None:
            self._paragraph.append(data)

    def _flush_paragraph(self):
        if self._paragraph is None:
            return
        text = " ".join("".join(self._paragraph).split())
        if text:
            self.all_paragraphs.append(text)
            if self._paragraph_in_article:
                self.article_paragraphs.append(text)
        self._paragraph = None

    def close(self):
        super().close()
        self._flush_paragraph()


def extract_from_html(html: str | bytes, url: str, ordinal: int = 0) -> Article:
    """Extract an article from an HTML page fetched from ``url``.

    ``ordinal`` disambiguates the synthesized id when several pages are
    imported in one batch. Raises ParseFailure when a required field cannot
    be resolved; fetching is the caller's concern.
    """
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    scan = _PageScan()
    scan.feed(html)
    scan.close()

    title = scan.meta.get("og:title", "").strip() or " ".join("".join(scan.title_text).split())
    if not title:
        raise ParseFailure("title")

    raw_ts = scan.meta.get("article:published_time", "").strip()
    if not raw_ts:
        raise ParseFailure("published_at")
    try:
        published_at = parse_rfc3339(raw_ts)
    except ValueError as exc:
        raise ParseFailure("published_at", f"unparseable publication time {raw_ts!r}") from exc

    publisher = scan.meta.get("og:site_name", "").strip() or (registrable_domain(url) or "")
    if not publisher:
        raise ParseFailure("publisher")

    paragraphs = scan.article_paragraphs or scan.all_paragraphs
    main_text = "\n\n".join(paragraphs)
    if not main_text:
        raise ParseFailure("main_text")

    image_url = scan.meta.get("og:image", "").strip() or None
    if image_url:
        image_url = urljoin(url, image_url)

    return Article(
        id=f"{publisher}-{raw_ts}-{ordinal}",
        publisher=publisher,
        title=title,
        main_text=main_text,
        published_at=published_at,
        published_at_raw=raw_ts,
        url=url,
        image_url=image_url,
    )
