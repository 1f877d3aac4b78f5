"""Intent-aware reranking and misalignment filtering of BM25 candidates."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Collection, Sequence

import yaml

from .errors import ParseError, UnknownDoc, ValidationError
from .index import Bm25Params, InvertedIndex, RankedList, idf, term_weight
from .intent import NEEDS, LabelStore, QueryIntent
from .taxonomy import CATEGORY_IDS, IntentLabel, Taxonomy

log = logging.getLogger(__name__)

STATS_SCOPES = ("candidates", "full")


@dataclass(frozen=True)
class RerankOptions:
    """``stats_scope``: where intent-term df/N (and avgdl, for "full") come from.

    ``candidates`` keeps original-term statistics from the full index and
    computes intent-term statistics over the reranked candidate set.
    ``full`` augments every labeled document in the collection.
    """

    stats_scope: str = "candidates"
    repeat: int = 1

    def __post_init__(self) -> None:
        if self.stats_scope not in STATS_SCOPES:
            raise ValueError(f"stats_scope must be one of {STATS_SCOPES}")
        if self.repeat < 1:
            raise ValueError("repeat must be >= 1")


def intent_text(label: IntentLabel | None, taxonomy: Taxonomy, repeat: int = 1) -> str:
    """Text appended for a label; empty for no label or Uncertain."""
    if label is None or label.is_uncertain:
        return ""
    return " ".join([taxonomy.display(taxonomy.check(label))] * repeat)


def augment_query(query_text: str, label: IntentLabel | None, taxonomy: Taxonomy, repeat: int = 1) -> str:
    extra = intent_text(label, taxonomy, repeat)
    return f"{query_text} {extra}" if extra else query_text


@dataclass(frozen=True)
class AugmentedDoc:
    doc_id: str
    augmented_text: str


def augment_doc(
    doc_id: str, text: str, has_url: bool, store: LabelStore, taxonomy: Taxonomy, repeat: int = 1
) -> AugmentedDoc:
    extra = intent_text(store.tweet(doc_id), taxonomy, repeat) if has_url else ""
    return AugmentedDoc(doc_id, f"{text} {extra}" if extra else text)


def unlabeled_candidates(
    candidates: Sequence[tuple[str, float]], store: LabelStore, url_docs: Collection[str] | None = None
) -> list[str]:
    """Candidates that carry a URL but have no label; they pass through unaugmented."""
    return [d for d, _ in candidates if (url_docs is None or d in url_docs) and store.tweet(d) is None]


def rerank(
    index: InvertedIndex,
    params: Bm25Params,
    query: str,
    query_label: IntentLabel | None,
    top_k: Sequence[tuple[str, float]],
    store: LabelStore,
    taxonomy: Taxonomy,
    options: RerankOptions | None = None,
    url_docs: Collection[str] | None = None,
) -> RankedList:
    """Rescore candidates with BM25 over intent-augmented query and documents.

    Only documents in ``url_docs`` (all, if None) are augmented. The output
    is a permutation of the candidate ids ordered by descending score, then
    ascending doc id.
    """
    options = options or RerankOptions()
    tok = index.tokenizer
    cand = [d for d, _ in top_k]
    if len(set(cand)) != len(cand):
        raise ValidationError("duplicate candidate ids")
    for d in cand:
        if d not in index:
            raise UnknownDoc(f"candidate {d!r} not in index")
    if not cand:
        return []

    q_tokens = tok(augment_query(query, query_label, taxonomy, options.repeat))
    vocab = set(tok(intent_text(query_label, taxonomy, options.repeat)))

    def aug_tokens(doc_id: str) -> list[str]:
        if url_docs is not None and doc_id not in url_docs:
            return []
        return tok(intent_text(store.tweet(doc_id), taxonomy, options.repeat))

    if options.stats_scope == "candidates":
        scope = cand
        n_scope = len(cand)
        avgdl = index.avg_doc_len
    else:
        scope = list(index.doc_len)
        n_scope = index.n_docs
    extra = {d: aug_tokens(d) for d in scope}
    for toks in extra.values():
        vocab.update(toks)
    if options.stats_scope == "full":
        total = sum(index.doc_len.values()) + sum(len(t) for t in extra.values())
        avgdl = total / index.n_docs

    intent_df: dict[str, int] = {}
    for t in vocab:
        intent_df[t] = sum(1 for d in scope if index.tf(t, d) > 0 or t in extra[d])

    scores = {}
    for d in cand:
        added = extra[d]
        dl = index.doc_len[d] + len(added)
        s = 0.0
        for t in q_tokens:
            tf = index.tf(t, d) + added.count(t)
            if not tf:
                continue
            if t in vocab:
                w_idf = idf(n_scope, intent_df[t])
            else:
                w_idf = idf(index.n_docs, index.df(t))
            s += term_weight(w_idf, tf, dl, avgdl, params)
        scores[d] = s
    return sorted(scores.items(), key=lambda x: (-x[1], x[0]))


# --- alignment policy -------------------------------------------------------


@dataclass(frozen=True)
class AlignmentPolicy:
    acceptable: dict[str, frozenset[str]]
    never_acceptable: frozenset[str] = frozenset()
    action: str = "filter"
    penalty: float = 0.0
    topic_overrides: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.action not in ("filter", "demote"):
            raise ValidationError(f"action must be 'filter' or 'demote', got {self.action!r}")
        if not 0.0 <= self.penalty <= 1.0:
            raise ValidationError("penalty must lie in [0, 1]")
        for need in self.acceptable:
            if need not in NEEDS:
                raise ValidationError(f"unknown need facet {need!r}")
        named = set().union(*self.acceptable.values(), self.never_acceptable, *self.topic_overrides.values())
        unknown = named - set(CATEGORY_IDS)
        if unknown:
            raise ValidationError(f"unknown categories in policy: {sorted(unknown)}")
        covered = set().union(*self.acceptable.values(), self.never_acceptable)
        missing = set(CATEGORY_IDS) - covered
        if missing:
            raise ValidationError(f"policy is not total; categories never mentioned: {sorted(missing)}")

    def allows(self, need: str, category: str, topic_id: str | None = None) -> bool:
        ok = self.acceptable.get(need)
        if ok is None:
            return True
        if topic_id is not None and category in self.topic_overrides.get(topic_id, ()):
            return True
        return category in ok


def load_policy(path: str | Path) -> AlignmentPolicy:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed policy: {exc}", str(path)) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("acceptable"), dict):
        raise ParseError("policy needs an 'acceptable' mapping", str(path))
    return AlignmentPolicy(
        acceptable={k: frozenset(v or ()) for k, v in doc["acceptable"].items()},
        never_acceptable=frozenset(doc.get("never_acceptable") or ()),
        action=str(doc.get("action", "filter")),
        penalty=float(doc.get("penalty", 0.0)),
        topic_overrides={str(k): frozenset(v or ()) for k, v in (doc.get("topic_overrides") or {}).items()},
    )


def default_policy() -> AlignmentPolicy:
    return load_policy(Path(str(resources.files("urlintent") / "data" / "policy.yaml")))


def filter_misaligned(
    policy: AlignmentPolicy,
    query_intent: QueryIntent | None,
    ranked: Sequence[tuple[str, float]],
    store: LabelStore,
    taxonomy: Taxonomy,
    topic_id: str | None = None,
) -> RankedList:
    """Drop (or demote) candidates whose category the query's need does not accept.

    Unlabeled and Uncertain candidates always pass untouched.
    """
    if query_intent is None:
        return list(ranked)
    out = []
    demoted = False
    for d, s in ranked:
        label = store.tweet(d)
        cat = None if label is None else taxonomy.category_of(label)
        if cat is None or policy.allows(query_intent.need, cat, topic_id):
            out.append((d, s))
        elif policy.action == "demote":
            out.append((d, s * (1.0 - policy.penalty)))
            demoted = True
    if demoted:
        out.sort(key=lambda x: (-x[1], x[0]))
    return out
