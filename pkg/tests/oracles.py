"""Independent reference implementations used only by the tests.

They favour the most literal reading of each formula over speed: exact
fractions for the kappas, full enumeration for BM25 and the metrics.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction


def fleiss_oracle(rows):
    """Fleiss' kappa by the textbook formula; None when chance agreement is 1."""
    rows = [list(r) for r in rows]
    N = len(rows)
    n = sum(rows[0])
    k = len(rows[0])
    p = [Fraction(sum(r[j] for r in rows), N * n) for j in range(k)]
    P = [Fraction(sum(c * (c - 1) for c in r), n * (n - 1)) for r in rows]
    p_bar = sum(P) / N
    p_e = sum(x * x for x in p)
    if p_e == 1:
        return None
    return float((p_bar - p_e) / (1 - p_e))


def cohen_oracle(a, b):
    """Cohen's kappa via an explicit confusion matrix; None when chance agreement is 1."""
    labels = sorted(set(a) | set(b), key=repr)
    n = len(a)
    conf = {(x, y): 0 for x in labels for y in labels}
    for x, y in zip(a, b):
        conf[(x, y)] += 1
    p_o = Fraction(sum(conf[(x, x)] for x in labels), n)
    rows = {x: sum(conf[(x, y)] for y in labels) for x in labels}
    cols = {y: sum(conf[(x, y)] for x in labels) for y in labels}
    p_e = Fraction(sum(rows[x] * cols[x] for x in labels), n * n)
    if p_e == 1:
        return None
    return float((p_o - p_e) / (1 - p_e))


def consensus_shape_oracle(votes):
    """Outcome kind name from the sorted vote-count shape of five votes."""
    shape = tuple(sorted(Counter(votes).values(), reverse=True))
    table = {
        (5,): "HighConsensus",
        (4, 1): "HighConsensus",
        (3, 2): "CompetingConsensus",
        (3, 1, 1): "SplitDecision",
    }
    return table.get(shape, "NoMajority")


def bm25_oracle(docs, query, k1=1.2, b=0.75, avgdl=None):
    """Score every doc from raw token lists; returns {doc_id: score}."""
    N = len(docs)
    if avgdl is None:
        avgdl = sum(len(t) for t in docs.values()) / N
    df = {q: sum(1 for t in docs.values() if q in t) for q in set(query)}
    out = {}
    for d, toks in docs.items():
        s = 0.0
        for q in query:
            tf = toks.count(q)
            if tf == 0:
                continue
            w = math.log(1 + (N - df[q] + 0.5) / (df[q] + 0.5))
            s += w * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len(toks) / avgdl))
        out[d] = s
    return out


def sort_oracle(scores, k):
    """Exhaustive ranking: drop zeros, sort by score desc then id asc, cut at k."""
    ranked = sorted(((s, d) for d, s in scores.items() if s > 0), key=lambda x: (-x[0], x[1]))
    return [(d, s) for s, d in ranked][:k]


def ndcg_oracle(ranking, qrels, k=10):
    """nDCG@k with linear gain; the ideal is the best of all orderings of judged docs."""
    def dcg(seq):
        return sum(qrels.get(d, 0) / math.log2(i + 2) for i, d in enumerate(seq[:k]))

    judged = sorted(qrels, key=lambda d: -qrels[d])
    best = dcg(judged)
    return dcg(list(ranking)) / best if best > 0 else 0.0


def ap_oracle(ranking, qrels):
    """Average precision as the mean over relevant docs of precision at their rank."""
    rel = {d for d, g in qrels.items() if g > 0}
    if not rel:
        return 0.0
    total = 0.0
    for i, d in enumerate(ranking):
        if d in rel:
            total += sum(1 for x in ranking[: i + 1] if x in rel) / (i + 1)
    return total / len(rel)
