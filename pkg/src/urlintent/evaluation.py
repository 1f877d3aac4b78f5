"""TREC-style evaluation: qrels and run files, nDCG@k, average precision."""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import FormatError, ParseError

log = logging.getLogger(__name__)

Qrels = dict[str, dict[str, int]]
RunFile = dict[str, list[tuple[str, float]]]
GAINS = ("linear", "exponential")


def topic_key(topic_id: str) -> str:
    """Match ``MB001`` style topic numbers against bare ``1`` in qrels."""
    m = re.fullmatch(r"(?:MB)?0*(\d+)", topic_id, re.IGNORECASE)
    return m.group(1) if m else topic_id


def read_qrels(path: str | Path) -> Qrels:
    """``topic iter doc_id grade`` lines. Negative grades are clamped to 0."""
    path = Path(path)
    qrels: Qrels = {}
    clamped = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 4:
                raise FormatError(f"qrels line needs 4 fields, got {len(parts)}", str(path), lineno)
            topic, _, doc, grade_s = parts
            try:
                grade = int(grade_s)
            except ValueError:
                raise FormatError(f"bad grade {grade_s!r}", str(path), lineno) from None
            if grade < 0:
                clamped += 1
                grade = 0
            judged = qrels.setdefault(topic, {})
            if doc in judged:
                raise FormatError(f"duplicate judgment for ({topic}, {doc})", str(path), lineno)
            judged[doc] = grade
    if clamped:
        log.warning("%s: clamped %d negative grades to 0", path, clamped)
    return qrels


def read_run(path: str | Path) -> RunFile:
    """``topic Q0 doc_id rank score tag`` lines, ordered by the rank column."""
    path = Path(path)
    rows: dict[str, list[tuple[int, str, float]]] = {}
    seen: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 6:
                raise FormatError(f"run line needs 6 fields, got {len(parts)}", str(path), lineno)
            topic, _, doc, rank_s, score_s, _tag = parts
            try:
                rank, score = int(rank_s), float(score_s)
            except ValueError:
                raise FormatError("rank must be int and score float", str(path), lineno) from None
            if (topic, doc) in seen:
                raise FormatError(f"duplicate doc {doc} for topic {topic}", str(path), lineno)
            seen.add((topic, doc))
            rows.setdefault(topic, []).append((rank, doc, score))
    run: RunFile = {}
    for topic, items in rows.items():
        items.sort(key=lambda x: x[0])
        ranked = [(d, s) for _, d, s in items]
        for (_, a), (_, b) in zip(ranked, ranked[1:]):
            if b > a:
                raise FormatError(f"topic {topic}: scores increase with rank", str(path))
        run[topic] = ranked
    return run


def format_run(run: Mapping[str, Sequence[tuple[str, float]]], tag: str) -> str:
    lines = []
    for topic in sorted(run, key=lambda t: (topic_key(t).zfill(8), t)):
        for rank, (doc, score) in enumerate(run[topic], start=1):
            lines.append(f"{topic} Q0 {doc} {rank} {score:.6f} {tag}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_topics(path: str | Path) -> dict[str, str]:
    """TREC topic file (``<num>``/``<title>`` blocks) or ``id<TAB>title`` lines."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if "<top>" in text:
        topics = {}
        for block in re.findall(r"<top>(.*?)</top>", text, re.S):
            num = re.search(r"<num>\s*(?:Number:)?\s*(\S+?)\s*(?:</num>|\n)", block)
            # older topic files leave <title> unclosed; the title then ends at the line break
            title = re.search(r"<title>\s*(.*?)\s*</title>", block, re.S) or re.search(
                r"<title>[ \t]*([^\n<]*)", block
            )
            if not num or not title:
                raise ParseError("topic block without <num> or <title>", str(path))
            topics[num.group(1)] = " ".join(title.group(1).split())
        return topics
    topics = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("topic line must be 'id<TAB>title'", str(path), lineno)
        topics[parts[0].strip()] = parts[1].strip()
    return topics


def _gain(grade: int, gain: str) -> float:
    return float(grade) if gain == "linear" else 2.0**grade - 1.0


def ndcg_at_k(
    ranking: Sequence[str], qrels_for_topic: Mapping[str, int], k: int = 10, gain: str = "linear"
) -> float:
    """nDCG@k with discount 1/log2(rank+1); 0 when the topic has no relevant docs."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if gain not in GAINS:
        raise ValueError(f"gain must be one of {GAINS}")
    dcg = sum(
        _gain(qrels_for_topic.get(d, 0), gain) / math.log2(r + 1) for r, d in enumerate(ranking[:k], start=1)
    )
    ideal = sorted((g for g in qrels_for_topic.values() if g > 0), reverse=True)[:k]
    idcg = sum(_gain(g, gain) / math.log2(r + 1) for r, g in enumerate(ideal, start=1))
    return dcg / idcg if idcg > 0 else 0.0


def average_precision(ranking: Sequence[str], qrels_for_topic: Mapping[str, int]) -> float:
    n_rel = sum(1 for g in qrels_for_topic.values() if g > 0)
    if not n_rel:
        return 0.0
    hits = 0
    total = 0.0
    for r, d in enumerate(ranking, start=1):
        if qrels_for_topic.get(d, 0) > 0:
            hits += 1
            total += hits / r
    return total / n_rel


@dataclass
class RunScores:
    name: str
    ndcg: float
    map: float
    per_topic: dict[str, tuple[float, float]] = field(default_factory=dict)


@dataclass
class Comparison:
    rows: list[RunScores]
    k: int = 10
    no_relevant_topics: list[str] = field(default_factory=list)
    extra_topics: dict[str, list[str]] = field(default_factory=dict)

    def to_tsv(self) -> str:
        lines = [f"run\tnDCG@{self.k}\tMAP"]
        lines += [f"{r.name}\t{r.ndcg:.4f}\t{r.map:.4f}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = ["", f"nDCG@{self.k}", "MAP"]
        body = [[r.name, f"{r.ndcg:.4f}", f"{r.map:.4f}"] for r in self.rows]
        widths = [max(len(x[i]) for x in [head, *body]) for i in range(3)]
        fmt = lambda row: "  ".join(c.ljust(widths[0]) if i == 0 else c.rjust(widths[i]) for i, c in enumerate(row))
        lines = [fmt(head), "  ".join("-" * w for w in widths), *map(fmt, body)]
        if self.no_relevant_topics:
            lines.append(f"note: topics without relevant docs scored 0: {', '.join(self.no_relevant_topics)}")
        for name, extra in self.extra_topics.items():
            lines.append(f"note: run {name} has topics absent from qrels (ignored): {', '.join(extra)}")
        return "\n".join(lines) + "\n"


def evaluate_runs(
    runs: Mapping[str, RunFile], qrels: Qrels, k: int = 10, gain: str = "linear"
) -> Comparison:
    """Mean nDCG@k and MAP per run over every qrels topic; missing topics score 0."""
    judged = {topic_key(t): (t, j) for t, j in qrels.items()}
    order = sorted(judged, key=lambda key: (key.zfill(8), key))
    no_rel = [judged[key][0] for key in order if not any(g > 0 for g in judged[key][1].values())]
    rows = []
    extras = {}
    for name, run in runs.items():
        by_key = {topic_key(t): ranked for t, ranked in run.items()}
        extra = sorted(t for t in run if topic_key(t) not in judged)
        if extra:
            extras[name] = extra
        per_topic = {}
        for key in order:
            topic, j = judged[key]
            docs = [d for d, _ in by_key.get(key, [])]
            per_topic[topic] = (ndcg_at_k(docs, j, k, gain), average_precision(docs, j))
        n = len(per_topic)
        rows.append(
            RunScores(
                name,
                sum(v[0] for v in per_topic.values()) / n if n else 0.0,
                sum(v[1] for v in per_topic.values()) / n if n else 0.0,
                per_topic,
            )
        )
    return Comparison(rows, k, no_rel, extras)
