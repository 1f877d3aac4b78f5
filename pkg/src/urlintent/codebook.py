"""Mechanical steps of building the codebook: exact dedupe and majority grouping.

Semantic near-duplicates are never detected automatically; they merge only
when enough workers flag the pair as identical in meaning.
"""

from __future__ import annotations

import csv
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError, UniverseMismatch, ValidationError


def normalize_code(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip().casefold()


@dataclass(frozen=True)
class IntentionCode:
    id: int
    text: str

    def __post_init__(self) -> None:
        if not normalize_code(self.text):
            raise ValidationError(f"code {self.id} is empty after normalization")


Pair = frozenset  # unordered pair of code ids


@dataclass(frozen=True)
class WorkerGrouping:
    worker_id: str
    groups: dict[str, frozenset[int]]
    identity_pairs: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for name, members in self.groups.items():
            if not members:
                raise ValidationError(f"worker {self.worker_id}: group {name!r} is empty")
            overlap = seen & members
            if overlap:
                raise ValidationError(f"worker {self.worker_id}: codes {sorted(overlap)} in more than one group")
            seen |= members
        for p in self.identity_pairs:
            if len(p) != 2:
                raise ValidationError(f"worker {self.worker_id}: identity pair {sorted(p)} is not a pair")
            if not p <= seen:
                raise ValidationError(f"worker {self.worker_id}: identity pair {sorted(p)} outside universe")

    @property
    def universe(self) -> frozenset[int]:
        return frozenset().union(*self.groups.values()) if self.groups else frozenset()


def dedupe_exact(codes: Sequence[IntentionCode]) -> tuple[list[IntentionCode], dict[int, int]]:
    """Collapse case/whitespace-insensitive duplicates onto the lowest id.

    Returns the kept codes (ordered by id) and a map from every input id to
    the id that represents it.
    """
    keeper: dict[str, IntentionCode] = {}
    for c in sorted(codes, key=lambda c: c.id):
        keeper.setdefault(normalize_code(c.text), c)
    mapping = {c.id: keeper[normalize_code(c.text)].id for c in codes}
    kept = sorted(keeper.values(), key=lambda c: c.id)
    return kept, mapping


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller id becomes root so representatives are deterministic
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo

    def classes(self) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(v) for v in out.values()), key=min)


def strict_majority(n_workers: int) -> int:
    return n_workers // 2 + 1


def _check_universe(groupings: Sequence[WorkerGrouping]) -> frozenset[int]:
    if not groupings:
        raise ValidationError("need at least one worker grouping")
    universe = groupings[0].universe
    for g in groupings[1:]:
        if g.universe != universe:
            diff = sorted(g.universe ^ universe)
            raise UniverseMismatch(f"worker {g.worker_id} covers a different code set (diff {diff[:5]})")
    return universe


@dataclass
class MergeResult:
    classes: list[frozenset[int]]

    @property
    def n_discarded(self) -> int:
        """Codes merged into another code's class."""
        return sum(len(c) - 1 for c in self.classes)

    @property
    def representative(self) -> dict[int, int]:
        return {x: min(c) for c in self.classes for x in c}


def consensus_merge(groupings: Sequence[WorkerGrouping], majority: int | None = None) -> MergeResult:
    """Merge codes whose identity flag is backed by at least ``majority`` workers."""
    universe = _check_universe(groupings)
    threshold = strict_majority(len(groupings)) if majority is None else majority
    votes = Counter(p for g in groupings for p in g.identity_pairs)
    uf = _UnionFind(sorted(universe))
    for pair, count in votes.items():
        if count >= threshold:
            uf.union(*pair)
    return MergeResult(uf.classes())


@dataclass(frozen=True)
class CodeGroup:
    name: str
    members: frozenset[int]


def consensus_grouping(groupings: Sequence[WorkerGrouping], majority: int | None = None) -> list[CodeGroup]:
    """Majority partition: connected components of pairs grouped together by enough workers.

    A component is named by the most frequent worker group name over the
    worker placements backing its edges; singletons use the names of the
    groups that contained them. Ties go to the lexicographically smallest name.
    """
    universe = _check_universe(groupings)
    threshold = strict_majority(len(groupings)) if majority is None else majority

    together: Counter[Pair] = Counter()
    names_for_pair: dict[Pair, Counter[str]] = {}
    for g in groupings:
        for name, members in g.groups.items():
            for a, b in combinations(sorted(members), 2):
                p = frozenset((a, b))
                together[p] += 1
                names_for_pair.setdefault(p, Counter())[name] += 1

    uf = _UnionFind(sorted(universe))
    kept = [p for p, c in together.items() if c >= threshold]
    for p in kept:
        uf.union(*p)

    groups = []
    for members in uf.classes():
        names: Counter[str] = Counter()
        if len(members) > 1:
            for p in kept:
                if p <= members:
                    names.update(names_for_pair[p])
        else:
            (code,) = members
            for g in groupings:
                names.update(n for n, m in g.groups.items() if code in m)
        best = min(names.items(), key=lambda kv: (-kv[1], kv[0]))[0] if names else f"group-{min(members)}"
        groups.append(CodeGroup(best, members))
    return groups


def load_codes(path: str | Path) -> list[IntentionCode]:
    path = Path(path)
    codes = []
    with path.open(encoding="utf-8", newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh, delimiter="\t"), start=1):
            if not rec or rec[0].startswith("#"):
                continue
            if lineno == 1 and rec[0].strip().lower() == "id":
                continue
            if len(rec) != 2:
                raise ParseError(f"expected 2 columns, got {len(rec)}", str(path), lineno)
            try:
                codes.append(IntentionCode(int(rec[0]), rec[1]))
            except ValueError as exc:
                raise ParseError(str(exc), str(path), lineno) from None
    return codes


def load_groupings(path: str | Path) -> list[WorkerGrouping]:
    """JSONL, one worker per line: ``{"worker_id", "groups": {name: [ids]}, "identity_pairs": [[a, b]]}``."""
    path = Path(path)
    out = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                out.append(
                    WorkerGrouping(
                        str(d["worker_id"]),
                        {str(k): frozenset(int(x) for x in v) for k, v in d["groups"].items()},
                        frozenset(frozenset(int(x) for x in p) for p in d.get("identity_pairs", [])),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError) as exc:
                raise ParseError(f"bad grouping record: {exc}", str(path), lineno) from None
    return out
