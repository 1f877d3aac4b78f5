"""Crowd-label aggregation: five-rater consensus, kappa statistics, distributions."""

from __future__ import annotations

import csv
import enum
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateId,
    IdMismatch,
    LengthMismatch,
    ParseError,
    RaggedMatrix,
    UnknownLabel,
    ValidationError,
    WrongRaterCount,
)
from .taxonomy import IntentLabel, Taxonomy, resolve_label

STUDY_PHASES = ("Study1", "Study2a", "Study2b", "Expert")
RATERS_PER_ITEM = 5
NC_UN = "NC-UN"
LOW_CONSENSUS = "Low consensus"


class _Undefined:
    """Kappa value when chance agreement is 1 and the statistic has no meaning."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


class OutcomeKind(str, enum.Enum):
    HIGH_CONSENSUS = "HighConsensus"
    COMPETING_CONSENSUS = "CompetingConsensus"
    SPLIT_DECISION = "SplitDecision"
    NO_MAJORITY = "NoMajority"


@dataclass(frozen=True)
class ConsensusOutcome:
    kind: OutcomeKind
    label: IntentLabel | None = None

    @property
    def is_nc_un(self) -> bool:
        return self.kind is OutcomeKind.NO_MAJORITY or (self.label is not None and self.label.is_uncertain)

    @property
    def has_majority(self) -> bool:
        """Some label got at least three votes and it is not Uncertain."""
        return not self.is_nc_un


@dataclass(frozen=True)
class AnnotationSet:
    item_id: str
    labels: tuple[tuple[str, IntentLabel], ...]
    study_phase: str = "Study1"

    def __post_init__(self) -> None:
        if self.study_phase not in STUDY_PHASES:
            raise ValidationError(f"unknown study phase {self.study_phase!r}")
        raters = [r for r, _ in self.labels]
        if len(set(raters)) != len(raters):
            raise DuplicateId(f"item {self.item_id}: duplicate rater ids")
        if self.study_phase == "Study1" and len(self.labels) != RATERS_PER_ITEM:
            raise WrongRaterCount(
                f"item {self.item_id}: Study1 items need {RATERS_PER_ITEM} labels, got {len(self.labels)}"
            )

    @property
    def votes(self) -> list[IntentLabel]:
        return [lab for _, lab in self.labels]


def classify_consensus(labels: Sequence[IntentLabel]) -> ConsensusOutcome:
    """Five votes to one of the four consensus outcomes. Uncertain is an ordinary vote."""
    if len(labels) != RATERS_PER_ITEM:
        raise WrongRaterCount(f"consensus needs exactly {RATERS_PER_ITEM} labels, got {len(labels)}")
    counts = Counter(labels)
    ranked = sorted(counts.items(), key=lambda kv: -kv[1])
    top_label, top = ranked[0]
    if top >= 4:
        return ConsensusOutcome(OutcomeKind.HIGH_CONSENSUS, top_label)
    if top == 3:
        if ranked[1][1] == 2:
            return ConsensusOutcome(OutcomeKind.COMPETING_CONSENSUS, top_label)
        return ConsensusOutcome(OutcomeKind.SPLIT_DECISION, top_label)
    return ConsensusOutcome(OutcomeKind.NO_MAJORITY)


def vote_matrix(
    items: Iterable[Sequence[Hashable]], categories: Sequence[Hashable] | None = None
) -> tuple[np.ndarray, list]:
    """Items x categories count matrix; columns default to sorted distinct labels."""
    items = [list(v) for v in items]
    if categories is None:
        categories = sorted({lab for votes in items for lab in votes}, key=str)
    col = {c: j for j, c in enumerate(categories)}
    m = np.zeros((len(items), len(categories)), dtype=np.int64)
    for i, votes in enumerate(items):
        for lab in votes:
            m[i, col[lab]] += 1
    return m, list(categories)


def fleiss_kappa(matrix, n: int | None = None) -> float | _Undefined:
    """Fleiss' kappa over an items x categories matrix of vote counts.

    Returns UNDEFINED when expected agreement is 1, i.e. every vote falls in a
    single category.
    """
    m = np.asarray(matrix, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] < 1:
        raise ValidationError("need a 2-D matrix with at least one item")
    if (m < 0).any():
        raise ValidationError("vote counts must be non-negative")
    sums = m.sum(axis=1)
    if n is None:
        n = int(sums[0])
    if (sums != n).any():
        raise RaggedMatrix(f"every row must sum to {n}; got sums {sorted(set(sums.tolist()))}")
    if n < 2:
        raise ValidationError("Fleiss' kappa needs at least 2 raters per item")
    n_items = m.shape[0]
    col_tot = m.sum(axis=0)
    if np.count_nonzero(col_tot) <= 1:
        return UNDEFINED
    p_j = col_tot / (n_items * n)
    p_e = float(np.sum(p_j * p_j))
    p_i = (np.sum(m * m, axis=1) - n) / (n * (n - 1))
    p_bar = float(np.mean(p_i))
    if p_bar == 1.0:
        return 1.0
    return (p_bar - p_e) / (1.0 - p_e)


def cohens_kappa(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float | _Undefined:
    if len(labels_a) != len(labels_b):
        raise LengthMismatch(f"sequences differ in length: {len(labels_a)} vs {len(labels_b)}")
    n = len(labels_a)
    if n == 0:
        raise LengthMismatch("sequences must be non-empty")
    ca, cb = Counter(labels_a), Counter(labels_b)
    if len(ca) == 1 and ca == cb:
        return UNDEFINED
    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n
    p_e = sum(ca[k] * cb[k] for k in ca) / (n * n)
    if p_o == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


def interpretation_band(kappa: float | _Undefined) -> str:
    """Landis & Koch (1977) verbal band."""
    if kappa is UNDEFINED:
        return "undefined"
    if kappa < 0:
        return "poor"
    for upper, name in ((0.20, "slight"), (0.40, "fair"), (0.60, "moderate"), (0.80, "substantial")):
        if kappa <= upper:
            return name
    return "almost perfect"


@dataclass(frozen=True)
class AgreementReport:
    fleiss_kappa: float | _Undefined
    n_items: int
    n_raters: int
    n_categories: int

    @property
    def interpretation_band(self) -> str:
        return interpretation_band(self.fleiss_kappa)


def agreement_report(sets: Sequence[AnnotationSet]) -> AgreementReport:
    if not sets:
        raise ValidationError("no annotation items")
    m, cats = vote_matrix(s.votes for s in sets)
    kappa = fleiss_kappa(m)
    return AgreementReport(kappa, len(sets), int(m[0].sum()), len(cats))


@dataclass
class Distribution:
    """Share of items per high-consensus label, plus residual buckets.

    ``shares`` partitions the items: one entry per high-consensus label key,
    ``NC-UN`` for no-majority items and ``Low consensus`` for competing or
    split outcomes. ``nc_un_percent`` is reported separately because
    unanimous-Uncertain items are both high consensus and NC-UN.
    """

    shares: dict[str, float]
    nc_un_percent: float
    n_items: int


def intention_distribution(outcomes: Mapping[str, ConsensusOutcome]) -> Distribution:
    n = len(outcomes)
    if n == 0:
        return Distribution({}, 0.0, 0)
    counts: Counter[str] = Counter()
    for o in outcomes.values():
        if o.kind is OutcomeKind.HIGH_CONSENSUS:
            counts[o.label.key] += 1
        elif o.kind is OutcomeKind.NO_MAJORITY:
            counts[NC_UN] += 1
        else:
            counts[LOW_CONSENSUS] += 1
    nc_un = sum(o.is_nc_un for o in outcomes.values())
    shares = {k: 100.0 * v / n for k, v in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))}
    return Distribution(shares, 100.0 * nc_un / n, n)


@dataclass
class DeltaReport:
    n_items: int
    n_nc_un_before: int
    n_gained: int
    transitions: list[tuple[str, ConsensusOutcome, ConsensusOutcome]] = field(default_factory=list)

    @property
    def gain_fraction(self) -> float:
        """Fraction of items that were NC-UN before and have a majority after."""
        return self.n_gained / self.n_nc_un_before if self.n_nc_un_before else 0.0


def agreement_delta(
    before: Mapping[str, ConsensusOutcome], after: Mapping[str, ConsensusOutcome]
) -> DeltaReport:
    if set(before) != set(after):
        missing = sorted(set(before) ^ set(after))
        raise IdMismatch(f"item ids differ between before and after: {missing[:5]}")
    transitions = []
    nc_before = gained = 0
    for item in sorted(before):
        b, a = before[item], after[item]
        transitions.append((item, b, a))
        if b.is_nc_un:
            nc_before += 1
            if a.has_majority:
                gained += 1
    return DeltaReport(len(before), nc_before, gained, transitions)


def load_annotations(path: str | Path, taxonomy: Taxonomy) -> list[AnnotationSet]:
    """Read a label file (item_id, rater_id, label, study_phase), grouped per item and phase."""
    path = Path(path)
    grouped: dict[tuple[str, str], list[tuple[str, IntentLabel]]] = {}
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        for lineno, rec in enumerate(reader, start=1):
            if not rec or not "".join(rec).strip() or rec[0].startswith("#"):
                continue
            if lineno == 1 and rec[0].strip().lower() == "item_id":
                continue
            if len(rec) != 4:
                raise ParseError(f"expected 4 columns, got {len(rec)}", str(path), lineno)
            item, rater, text, phase = (c.strip() for c in rec)
            try:
                label = resolve_label(taxonomy, text)
            except UnknownLabel as exc:
                raise UnknownLabel(f"{path}:{lineno}: {exc}") from None
            grouped.setdefault((item, phase), []).append((rater, label))
    out = []
    for (item, phase), labels in grouped.items():
        try:
            out.append(AnnotationSet(item, tuple(labels), phase))
        except ValidationError as exc:
            raise type(exc)(f"{path}: {exc}") from None
    return out


def consensus_outcomes(sets: Iterable[AnnotationSet]) -> dict[str, ConsensusOutcome]:
    return {s.item_id: classify_consensus(s.votes) for s in sets}
