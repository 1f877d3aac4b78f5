"""Tweet + linked-document records, JSONL ingestion and property bucketing."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import UnknownId, ValidationError
from .taxonomy import CATEGORY_IDS, IntentLabel, Taxonomy

log = logging.getLogger(__name__)

TWEET_TYPES = ("regular", "reply", "quoted")
TYPE_COLUMNS = ("Regular", "Replies", "Quoted")
LENGTH_BUCKETS = ("<35", "35–70", "71–105", "106–175", ">175")
REACTION_BUCKETS = ("0", "1–5", "6–10", ">10")
NC_UN = "NC-UN"


@dataclass(frozen=True)
class LinkedDoc:
    url: str
    title: str = ""
    body_text: str = ""
    fetch_ok: bool = False

    def __post_init__(self) -> None:
        if not self.fetch_ok and (self.title or self.body_text):
            raise ValidationError(f"linked doc {self.url!r}: unfetched doc must have empty title/body")


@dataclass(frozen=True)
class TweetRecord:
    id: str
    text: str
    tweet_type: str = "regular"
    urls: tuple[str, ...] = ()
    linked_docs: tuple[LinkedDoc, ...] = ()
    likes: int = 0
    replies: int = 0
    retweets: int = 0
    parent_context: tuple[TweetRecord, ...] | None = None
    hashtags: tuple[str, ...] = ()
    mentions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("record id must be non-empty")
        if self.tweet_type not in TWEET_TYPES:
            raise ValidationError(f"tweet_type must be one of {TWEET_TYPES}, got {self.tweet_type!r}")
        for name in ("likes", "replies", "retweets"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValidationError(f"{name} must be a non-negative integer, got {value!r}")
        if len(self.linked_docs) != len(self.urls):
            raise ValidationError("linked_docs must be parallel to urls")
        for url, doc in zip(self.urls, self.linked_docs):
            if doc.url != url:
                raise ValidationError(f"linked doc url {doc.url!r} does not match {url!r}")
        if self.parent_context is not None and self.tweet_type == "regular":
            raise ValidationError("parent_context is only allowed on replies and quoted tweets")

    @property
    def reactions(self) -> int:
        return self.likes + self.replies + self.retweets

    def linked_text(self) -> str:
        return " ".join(f"{d.title} {d.body_text}".strip() for d in self.linked_docs if d.fetch_ok)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "tweet_type": self.tweet_type,
            "urls": list(self.urls),
            "linked_docs": [
                {"url": d.url, "title": d.title, "body_text": d.body_text, "fetch_ok": d.fetch_ok}
                for d in self.linked_docs
            ],
            "likes": self.likes,
            "replies": self.replies,
            "retweets": self.retweets,
            "parent_context": None
            if self.parent_context is None
            else [p.to_dict() for p in self.parent_context],
            "hashtags": list(self.hashtags),
            "mentions": list(self.mentions),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> TweetRecord:
        if not isinstance(d, Mapping):
            raise ValidationError("record must be a JSON object")
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"unknown fields {sorted(unknown)}")
        if "id" not in d or "text" not in d:
            raise ValidationError("record requires 'id' and 'text'")
        urls = tuple(_str_list(d.get("urls", []), "urls"))
        raw_docs = d.get("linked_docs")
        if raw_docs is None:
            docs = tuple(LinkedDoc(u) for u in urls)
        else:
            if not isinstance(raw_docs, list):
                raise ValidationError("linked_docs must be a list")
            docs = tuple(
                LinkedDoc(
                    str(x.get("url", "")),
                    str(x.get("title", "")),
                    str(x.get("body_text", "")),
                    bool(x.get("fetch_ok", False)),
                )
                for x in raw_docs
            )
        parents = d.get("parent_context")
        if parents is not None:
            if not isinstance(parents, list):
                raise ValidationError("parent_context must be a list or null")
            parents = tuple(cls.from_dict(p) for p in parents)
        return cls(
            id=str(d["id"]),
            text=str(d["text"]),
            tweet_type=str(d.get("tweet_type", "regular")).lower(),
            urls=urls,
            linked_docs=docs,
            likes=d.get("likes", 0),
            replies=d.get("replies", 0),
            retweets=d.get("retweets", 0),
            parent_context=parents,
            hashtags=tuple(_str_list(d.get("hashtags", []), "hashtags")),
            mentions=tuple(_str_list(d.get("mentions", []), "mentions")),
        )


def _str_list(value, name: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValidationError(f"{name} must be a list of strings")
    return value


@dataclass
class Corpus:
    records: list[TweetRecord] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_id = {r.id: r for r in self.records}
        if len(self._by_id) != len(self.records):
            raise ValidationError("duplicate record ids in corpus")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TweetRecord]:
        return iter(self.records)

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self._by_id

    def __getitem__(self, doc_id: str) -> TweetRecord:
        try:
            return self._by_id[doc_id]
        except KeyError:
            raise UnknownId(f"unknown tweet id {doc_id!r}") from None

    def documents(self, include_linked: bool = False) -> Iterator[tuple[str, str]]:
        """(doc_id, indexable text) pairs, optionally with linked title+body appended."""
        for r in self.records:
            if include_linked:
                extra = r.linked_text()
                yield r.id, f"{r.text} {extra}" if extra else r.text
            else:
                yield r.id, r.text


def ingest(path: str | Path, require_urls: bool = False) -> Corpus:
    """Read a JSONL corpus. Bad records are collected in ``Corpus.errors``, not raised."""
    path = Path(path)
    records: list[TweetRecord] = []
    errors: list[tuple[int, str]] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = TweetRecord.from_dict(json.loads(line))
                if rec.id in seen:
                    raise ValidationError(f"duplicate id {rec.id!r}")
                if require_urls and not rec.urls:
                    raise ValidationError(f"record {rec.id!r} has no URL")
            except (json.JSONDecodeError, ValidationError, TypeError, AttributeError) as exc:
                errors.append((lineno, str(exc)))
                log.warning("%s:%d: rejected record: %s", path, lineno, exc)
                continue
            seen.add(rec.id)
            records.append(rec)
    return Corpus(records, errors)


def dumps_record(record: TweetRecord) -> str:
    return json.dumps(record.to_dict(), ensure_ascii=False, separators=(",", ":"))


def write_corpus(corpus: Iterable[TweetRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for rec in corpus:
            fh.write(dumps_record(rec) + "\n")


def bucket_length(text: str) -> str:
    n = len(text)  # code points, URL included
    if n < 35:
        return "<35"
    if n <= 70:
        return "35–70"
    if n <= 105:
        return "71–105"
    if n <= 175:
        return "106–175"
    return ">175"


def bucket_reaction_total(total: int) -> str:
    if total < 0:
        raise ValueError("reaction total must be non-negative")
    if total == 0:
        return "0"
    if total <= 5:
        return "1–5"
    if total <= 10:
        return "6–10"
    return ">10"


def bucket_reactions(record: TweetRecord) -> str:
    return bucket_reaction_total(record.reactions)


@dataclass
class DistributionSection:
    title: str
    columns: tuple[str, ...]
    rows: list[tuple[str, int, tuple[float, ...]]] = field(default_factory=list)


@dataclass
class DistributionTable:
    """Percent breakdowns per intent group, one section per tweet property."""

    sections: list[DistributionSection]

    @property
    def is_empty(self) -> bool:
        return all(not s.rows for s in self.sections)

    def section(self, title: str) -> DistributionSection:
        for s in self.sections:
            if s.title == title:
                return s
        raise KeyError(title)

    def to_tsv(self) -> str:
        lines = ["section\tgroup\tn\tcolumn\tpercent"]
        for s in self.sections:
            for group, n, pcts in s.rows:
                for col, p in zip(s.columns, pcts):
                    lines.append(f"{s.title}\t{group}\t{n}\t{col}\t{p:.1f}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = []
        for s in self.sections:
            out.append(f"intentions vs. {s.title}")
            header = ["Intention", "n", *s.columns]
            body = [[g, str(n), *(f"{p:.1f}%" for p in pcts)] for g, n, pcts in s.rows]
            out.append(_align([header, *body]))
            out.append("")
        return "\n".join(out)


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for k, r in enumerate(rows):
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))))
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _percentages(values: list[str], columns: tuple[str, ...]) -> tuple[float, ...]:
    counts = Counter(values)
    n = len(values)
    return tuple(100.0 * counts[c] / n for c in columns)


def corpus_stats(
    corpus: Corpus,
    labels: Mapping[str, IntentLabel | None] | None = None,
    taxonomy: Taxonomy | None = None,
) -> DistributionTable:
    """Distribution of tweet type, length and reactions per intent group.

    ``labels`` maps tweet id to its consensus label; ``None`` means no
    majority. Both ``None`` and Uncertain go to the NC-UN group. Class labels
    roll up to their category, which needs ``taxonomy``. Groups without
    members are omitted.
    """
    groups: dict[str, list[TweetRecord]] = {"All": list(corpus)}
    if labels is not None:
        for cid in CATEGORY_IDS:
            groups[cid] = []
        groups[NC_UN] = []
        for tid, label in labels.items():
            rec = corpus[tid]
            if label is None or label.is_uncertain:
                groups[NC_UN].append(rec)
            elif label.kind == "category":
                groups[label.id].append(rec)
            else:
                if taxonomy is None:
                    raise ValueError("class-level labels need a taxonomy to roll up")
                groups[taxonomy.category_of(label)].append(rec)

    sections = [
        DistributionSection("tweets type", TYPE_COLUMNS),
        DistributionSection("tweets length", LENGTH_BUCKETS),
        DistributionSection("reactions count", REACTION_BUCKETS),
    ]
    type_name = dict(zip(TWEET_TYPES, TYPE_COLUMNS))
    for group, recs in groups.items():
        if not recs:
            continue
        n = len(recs)
        sections[0].rows.append((group, n, _percentages([type_name[r.tweet_type] for r in recs], TYPE_COLUMNS)))
        sections[1].rows.append((group, n, _percentages([bucket_length(r.text) for r in recs], LENGTH_BUCKETS)))
        sections[2].rows.append((group, n, _percentages([bucket_reactions(r) for r in recs], REACTION_BUCKETS)))
    return DistributionTable(sections)
