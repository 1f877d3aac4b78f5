"""Intent labels for tweets and queries.

Gold label files are the primary source. ``classify_heuristic`` is an
experimental lexicon classifier for unlabeled corpora; it never feeds the
acceptance metrics.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable
from urllib.parse import urlparse

import yaml

from .corpus import TweetRecord
from .errors import DuplicateId, ParseError, UnknownLabel
from .taxonomy import UNCERTAIN_LABEL, IntentLabel, Taxonomy, resolve_label

NEEDS = ("Informational", "Navigational", "Transactional")
SCOPES = ("Directed", "Undirected")
OPENNESS = ("Open", "Closed")


@dataclass(frozen=True)
class QueryIntent:
    need: str
    scope: str
    openness: str

    def __post_init__(self) -> None:
        for value, allowed in ((self.need, NEEDS), (self.scope, SCOPES), (self.openness, OPENNESS)):
            if value not in allowed:
                raise ValueError(f"{value!r} not one of {allowed}")

    @property
    def display(self) -> str:
        return f"{self.need[0]}/{self.scope[0]}/{self.openness[0]}"

    @classmethod
    def parse(cls, text: str) -> QueryIntent:
        """Accepts ``I/U/C`` or ``Informational/Undirected/Closed``."""
        parts = [p.strip() for p in text.split("/")]
        if len(parts) != 3:
            raise ValueError(f"query intent needs three facets, got {text!r}")
        facets = []
        for part, allowed in zip(parts, (NEEDS, SCOPES, OPENNESS)):
            match = [a for a in allowed if a.lower() == part.lower() or a[0] == part.upper()]
            if len(match) != 1:
                raise ValueError(f"cannot parse facet {part!r} (expected one of {allowed})")
            facets.append(match[0])
        return cls(*facets)


@dataclass
class LabelStore:
    tweet_labels: dict[str, IntentLabel] = field(default_factory=dict)
    query_labels: dict[str, tuple[QueryIntent | None, IntentLabel | None]] = field(default_factory=dict)

    def tweet(self, tweet_id: str) -> IntentLabel | None:
        return self.tweet_labels.get(tweet_id)

    def query_intent(self, query_id: str) -> QueryIntent | None:
        return self.query_labels.get(query_id, (None, None))[0]

    def query_label(self, query_id: str) -> IntentLabel | None:
        return self.query_labels.get(query_id, (None, None))[1]

    def merge(self, other: LabelStore) -> LabelStore:
        dup = (set(self.tweet_labels) & set(other.tweet_labels)) | (set(self.query_labels) & set(other.query_labels))
        if dup:
            raise DuplicateId(f"ids labeled twice: {sorted(dup)[:5]}")
        return LabelStore({**self.tweet_labels, **other.tweet_labels}, {**self.query_labels, **other.query_labels})


_EMPTY = {"", "-", "none"}


def load_labels(path: str | Path, taxonomy: Taxonomy) -> LabelStore:
    """Tab-separated label file.

    Two-column rows ``tweet_id  label`` label tweets; three-column rows
    ``query_id  facets  label`` label queries, where facets is e.g. ``I/U/C``
    and either field may be ``-``. Blank lines and ``#`` comments are skipped.
    """
    path = Path(path)
    store = LabelStore()
    with path.open(encoding="utf-8", newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh, delimiter="\t"), start=1):
            rec = [c.strip() for c in rec]
            if not rec or not "".join(rec) or rec[0].startswith("#"):
                continue
            if lineno == 1 and rec[0].lower() in ("tweet_id", "query_id", "id"):
                continue
            if len(rec) == 2:
                tid, text = rec
                if tid in store.tweet_labels:
                    raise DuplicateId(f"{path}:{lineno}: tweet {tid!r} labeled twice")
                store.tweet_labels[tid] = _resolve(taxonomy, text, path, lineno)
            elif len(rec) == 3:
                qid, facets, text = rec
                if qid in store.query_labels:
                    raise DuplicateId(f"{path}:{lineno}: query {qid!r} labeled twice")
                try:
                    qi = None if facets.lower() in _EMPTY else QueryIntent.parse(facets)
                except ValueError as exc:
                    raise ParseError(str(exc), str(path), lineno) from None
                label = None if text.lower() in _EMPTY else _resolve(taxonomy, text, path, lineno)
                store.query_labels[qid] = (qi, label)
            else:
                raise ParseError(f"expected 2 or 3 columns, got {len(rec)}", str(path), lineno)
    return store


def _resolve(taxonomy: Taxonomy, text: str, path: Path, lineno: int) -> IntentLabel:
    try:
        return resolve_label(taxonomy, text)
    except UnknownLabel as exc:
        raise UnknownLabel(f"{path}:{lineno}: {exc}") from None


def load_label_files(paths: Iterable[str | Path], taxonomy: Taxonomy) -> LabelStore:
    store = LabelStore()
    for p in paths:
        store = store.merge(load_labels(p, taxonomy))
    return store


# --- experimental heuristic classifier ------------------------------------

RULE_FIELDS = ("text", "type", "domain", "title")


@dataclass(frozen=True)
class Rule:
    field: str
    pattern: re.Pattern
    label: IntentLabel
    weight: float


@dataclass(frozen=True)
class RuleSet:
    version: str
    rules: tuple[Rule, ...]


def load_rules(path: str | Path, taxonomy: Taxonomy) -> RuleSet:
    """YAML rule file: ``version`` plus an ordered ``rules`` list of field/pattern/label/weight."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed rule file: {exc}", str(path)) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("rules"), list):
        raise ParseError("rule file needs a 'rules' list", str(path))
    rules = []
    for i, r in enumerate(doc["rules"]):
        if r.get("field") not in RULE_FIELDS:
            raise ParseError(f"rule #{i}: field must be one of {RULE_FIELDS}", str(path))
        weight = float(r.get("weight", 1.0))
        if weight <= 0:
            raise ParseError(f"rule #{i}: weight must be positive", str(path))
        label = resolve_label(taxonomy, str(r["label"]))
        if label.is_uncertain:
            raise ParseError(f"rule #{i}: rules cannot emit Uncertain", str(path))
        rules.append(Rule(r["field"], re.compile(str(r["pattern"]), re.IGNORECASE), label, weight))
    return RuleSet(str(doc.get("version", "0")), tuple(rules))


def shipped_rules(taxonomy: Taxonomy) -> RuleSet:
    return load_rules(Path(str(resources.files("urlintent") / "data" / "rules.yaml")), taxonomy)


def _field_values(tweet: TweetRecord, name: str) -> list[str]:
    if name == "text":
        return [tweet.text]
    if name == "type":
        return [tweet.tweet_type]
    if name == "domain":
        return [urlparse(u if "://" in u else "http://" + u).netloc.lower() for u in tweet.urls]
    return [d.title for d in tweet.linked_docs if d.fetch_ok]


def classify_heuristic(
    tweet: TweetRecord, taxonomy: Taxonomy, rules: RuleSet | None = None
) -> tuple[IntentLabel, float]:
    """Score each rule that fires; the best label wins, earliest rule breaking ties.

    Confidence is the winner's share of all fired weight. No rule firing gives
    (Uncertain, 0.0).
    """
    rules = rules or shipped_rules(taxonomy)
    scores: dict[IntentLabel, float] = {}
    first_seen: dict[IntentLabel, int] = {}
    for i, rule in enumerate(rules.rules):
        if any(rule.pattern.search(v) for v in _field_values(tweet, rule.field) if v):
            scores[rule.label] = scores.get(rule.label, 0.0) + rule.weight
            first_seen.setdefault(rule.label, i)
    if not scores:
        return UNCERTAIN_LABEL, 0.0
    best = min(scores, key=lambda lab: (-scores[lab], first_seen[lab]))
    return taxonomy.check(best), scores[best] / sum(scores.values())
