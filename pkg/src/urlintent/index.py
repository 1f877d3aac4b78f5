"""Tokenization, inverted index and BM25 top-k retrieval."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .errors import ParseError, UnknownDoc

URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
HASHTAG_RE = re.compile(r"#\w+")
WORD_RE = re.compile(r"[^\W_]+")

RankedList = list[tuple[str, float]]
INDEX_FORMAT = "urlintent-index"
INDEX_VERSION = 1


@dataclass(frozen=True)
class Tokenizer:
    lowercase: bool = True
    strip_urls: bool = True
    keep_hashtag_body: bool = True

    def __call__(self, text: str) -> list[str]:
        return tokenize(text, self)


def tokenize(text: str, config: Tokenizer | None = None) -> list[str]:
    """Alphanumeric runs; URLs removed first, '#'/'@' sigils dropped with bodies kept."""
    cfg = config or Tokenizer()
    if cfg.strip_urls:
        text = URL_RE.sub(" ", text)
    if not cfg.keep_hashtag_body:
        text = HASHTAG_RE.sub(" ", text)
    if cfg.lowercase:
        text = text.lower()
    return WORD_RE.findall(text)


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self) -> None:
        if not self.k1 > 0:
            raise ValueError(f"k1 must be > 0, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b must be in [0, 1], got {self.b}")


def idf(n_docs: int, df: int) -> float:
    return math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))


def term_weight(idf_t: float, tf: int, doc_len: int, avg_doc_len: float, params: Bm25Params) -> float:
    norm = 1.0 - params.b + params.b * doc_len / avg_doc_len
    return idf_t * tf * (params.k1 + 1.0) / (tf + params.k1 * norm)


@dataclass
class InvertedIndex:
    postings: dict[str, list[tuple[str, int]]]
    doc_len: dict[str, int]
    tokenizer: Tokenizer = field(default_factory=Tokenizer)
    doc_tf: dict[str, dict[str, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.doc_tf:
            tf: dict[str, dict[str, int]] = {d: {} for d in self.doc_len}
            for term, plist in self.postings.items():
                for d, n in plist:
                    tf[d][term] = n
            self.doc_tf = tf
        self.n_docs = len(self.doc_len)
        self.avg_doc_len = sum(self.doc_len.values()) / self.n_docs if self.doc_len else 0.0

    def df(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def tf(self, term: str, doc_id: str) -> int:
        return self.doc_tf[doc_id].get(term, 0)

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self.doc_len


def build_index(
    corpus: Union[Mapping[str, str], Iterable[tuple[str, str]], "object"],
    tokenizer: Tokenizer | None = None,
    include_linked: bool = False,
) -> InvertedIndex:
    """Index a Corpus, a ``{doc_id: text}`` mapping or ``(doc_id, text)`` pairs."""
    tokenizer = tokenizer or Tokenizer()
    if hasattr(corpus, "documents"):
        docs = corpus.documents(include_linked)
    elif isinstance(corpus, Mapping):
        docs = corpus.items()
    else:
        docs = corpus
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_len: dict[str, int] = {}
    doc_tf: dict[str, dict[str, int]] = {}
    for doc_id, text in docs:
        if doc_id in doc_len:
            raise ValueError(f"duplicate doc id {doc_id!r}")
        toks = tokenizer(text)
        doc_len[doc_id] = len(toks)
        doc_tf[doc_id] = dict(Counter(toks))
    for doc_id in sorted(doc_tf):
        for term, n in doc_tf[doc_id].items():
            postings.setdefault(term, []).append((doc_id, n))
    return InvertedIndex(postings, doc_len, tokenizer, doc_tf)


def _query_tokens(index: InvertedIndex, query: str | Sequence[str]) -> list[str]:
    return index.tokenizer(query) if isinstance(query, str) else list(query)


def bm25_score(index: InvertedIndex, params: Bm25Params, query_tokens: str | Sequence[str], doc_id: str) -> float:
    """BM25 score of one document; repeated query tokens count once per occurrence."""
    if doc_id not in index.doc_len:
        raise UnknownDoc(f"unknown doc {doc_id!r}")
    tfs = index.doc_tf[doc_id]
    dl = index.doc_len[doc_id]
    avgdl = index.avg_doc_len
    score = 0.0
    for t in _query_tokens(index, query_tokens):
        tf = tfs.get(t, 0)
        if tf:
            score += term_weight(idf(index.n_docs, index.df(t)), tf, dl, avgdl, params)
    return score


def rank(scores: Mapping[str, float], k: int | None = None) -> RankedList:
    """Descending score, ascending doc_id on ties; zero scores dropped."""
    out = sorted(((d, s) for d, s in scores.items() if s > 0.0), key=lambda x: (-x[1], x[0]))
    return out if k is None else out[:k]


def search(
    index: InvertedIndex, params: Bm25Params, query: str | Sequence[str], k: int = 50
) -> RankedList:
    if k < 1:
        raise ValueError("k must be >= 1")
    if not index.n_docs:
        return []
    avgdl = index.avg_doc_len
    scores: dict[str, float] = {}
    # accumulate in query-token order so sums match bm25_score bit for bit
    for t in _query_tokens(index, query):
        plist = index.postings.get(t)
        if not plist:
            continue
        w_idf = idf(index.n_docs, len(plist))
        for d, tf in plist:
            scores[d] = scores.get(d, 0.0) + term_weight(w_idf, tf, index.doc_len[d], avgdl, params)
    return rank(scores, k)


def save_index(index: InvertedIndex, path: str | Path) -> None:
    """JSON snapshot: format tag, version, tokenizer config, doc lengths, postings."""
    doc = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "tokenizer": asdict(index.tokenizer),
        "doc_len": dict(sorted(index.doc_len.items())),
        "postings": {t: [[d, n] for d, n in p] for t, p in sorted(index.postings.items())},
    }
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n", encoding="utf-8")


def load_index(path: str | Path) -> InvertedIndex:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad index snapshot: {exc}", str(path)) from None
    if doc.get("format") != INDEX_FORMAT or doc.get("version") != INDEX_VERSION:
        raise ParseError("not a supported index snapshot", str(path))
    postings = {t: [(d, int(n)) for d, n in p] for t, p in doc["postings"].items()}
    return InvertedIndex(postings, {d: int(n) for d, n in doc["doc_len"].items()}, Tokenizer(**doc["tokenizer"]))
