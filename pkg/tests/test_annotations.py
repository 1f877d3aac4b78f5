from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from urlintent.annotations import (
    UNDEFINED,
    AnnotationSet,
    ConsensusOutcome,
    OutcomeKind,
    agreement_delta,
    agreement_report,
    classify_consensus,
    cohens_kappa,
    consensus_outcomes,
    fleiss_kappa,
    intention_distribution,
    interpretation_band,
    load_annotations,
    vote_matrix,
)
from urlintent.errors import IdMismatch, LengthMismatch, ParseError, RaggedMatrix, UnknownLabel, ValidationError, WrongRaterCount
from urlintent.taxonomy import CATEGORY_IDS, UNCERTAIN_LABEL, IntentLabel

from .oracles import cohen_oracle, consensus_shape_oracle, fleiss_oracle

SYMBOLS = [IntentLabel.category(c) for c in CATEGORY_IDS] + [UNCERTAIN_LABEL]
A, B, C = SYMBOLS[:3]
U = UNCERTAIN_LABEL


def test_consensus_examples():
    assert classify_consensus([A, A, A, A, B]) == ConsensusOutcome(OutcomeKind.HIGH_CONSENSUS, A)
    assert classify_consensus([A, A, A, B, B]) == ConsensusOutcome(OutcomeKind.COMPETING_CONSENSUS, A)
    assert classify_consensus([A, B, A, C, A]) == ConsensusOutcome(OutcomeKind.SPLIT_DECISION, A)
    o = classify_consensus([A, A, B, B, C])
    assert o.kind is OutcomeKind.NO_MAJORITY and o.label is None and o.is_nc_un
    u = classify_consensus([U] * 5)
    assert u.kind is OutcomeKind.HIGH_CONSENSUS and u.label == U and u.is_nc_un
    assert not u.has_majority


def test_consensus_needs_five():
    with pytest.raises(WrongRaterCount):
        classify_consensus([A, A, A, A])


def test_consensus_all_multisets_match_shape_oracle():
    multisets = list(itertools.combinations_with_replacement(SYMBOLS, 5))
    assert len(multisets) == 462
    for ms in multisets:
        assert classify_consensus(list(ms)).kind.value == consensus_shape_oracle(ms)


@settings(max_examples=200)
@given(st.lists(st.sampled_from(SYMBOLS), min_size=5, max_size=5), st.randoms())
def test_consensus_order_invariant(votes, rnd):
    shuffled = votes[:]
    rnd.shuffle(shuffled)
    assert classify_consensus(votes) == classify_consensus(shuffled)


def test_fleiss_fixture():
    assert fleiss_kappa([(3, 0), (0, 3), (2, 1)]) == pytest.approx(22 / 40, abs=1e-12)
    assert fleiss_oracle([(3, 0), (0, 3), (2, 1)]) == pytest.approx(0.55, abs=1e-12)


def test_fleiss_unanimous_items():
    assert fleiss_kappa([(5, 0, 0), (0, 5, 0), (0, 0, 5)]) == 1.0


def test_fleiss_single_category_is_undefined():
    assert fleiss_kappa([(4,), (4,)]) is UNDEFINED
    assert fleiss_kappa([(4, 0), (4, 0)]) is UNDEFINED
    assert str(UNDEFINED) == "undefined" and not UNDEFINED


def test_fleiss_errors():
    with pytest.raises(RaggedMatrix):
        fleiss_kappa([(3, 0), (1, 1)])
    with pytest.raises(ValidationError):
        fleiss_kappa([(1, 0), (0, 1)])
    with pytest.raises(ValidationError):
        fleiss_kappa(np.zeros((0, 2)))


def _random_matrix(rng):
    n_items = rng.randint(1, 10)
    k = rng.randint(1, 4)
    n = rng.randint(2, 7)
    rows = []
    for _ in range(n_items):
        row = [0] * k
        for _ in range(n):
            row[rng.randrange(k)] += 1
        rows.append(row)
    return rows


def test_fleiss_matches_oracle_on_random_matrices():
    rng = random.Random(7)
    for _ in range(1000):
        rows = _random_matrix(rng)
        got, want = fleiss_kappa(rows), fleiss_oracle(rows)
        if want is None:
            assert got is UNDEFINED
        else:
            assert abs(got - want) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_fleiss_permutation_invariant(rnd):
    rows = _random_matrix(rnd)
    m = np.array(rows)
    perm = m[rnd.sample(range(m.shape[0]), m.shape[0])][:, rnd.sample(range(m.shape[1]), m.shape[1])]
    a, b = fleiss_kappa(m), fleiss_kappa(perm)
    assert (a is UNDEFINED and b is UNDEFINED) or abs(a - b) <= 1e-12


def test_cohen_examples():
    assert cohens_kappa("ABAB", "ABAB") == 1.0
    assert cohens_kappa("AABB", "BBAA") == -1.0
    assert cohens_kappa("AAAA", "AAAA") is UNDEFINED
    assert cohens_kappa("AAAA", "BBBB") == 0.0
    with pytest.raises(LengthMismatch):
        cohens_kappa("AB", "A")
    with pytest.raises(LengthMismatch):
        cohens_kappa("", "")


def test_cohen_matches_oracle_on_random_pairs():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 12)
        k = rng.randint(1, 4)
        a = [rng.randrange(k) for _ in range(n)]
        b = [rng.randrange(k) for _ in range(n)]
        got, want = cohens_kappa(a, b), cohen_oracle(a, b)
        if want is None:
            assert got is UNDEFINED
        else:
            assert abs(got - want) <= 1e-12


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=20))
def test_cohen_symmetric(pairs):
    a, b = [x for x, _ in pairs], [y for _, y in pairs]
    x, y = cohens_kappa(a, b), cohens_kappa(b, a)
    assert (x is UNDEFINED and y is UNDEFINED) or x == pytest.approx(y, abs=1e-12)


@pytest.mark.parametrize(
    "kappa, band",
    [(-0.1, "poor"), (0.0, "slight"), (0.2, "slight"), (0.216, "fair"), (0.4, "fair"), (0.55, "moderate"),
     (0.793, "substantial"), (0.81, "almost perfect"), (1.0, "almost perfect"), (UNDEFINED, "undefined")],
)
def test_bands(kappa, band):
    assert interpretation_band(kappa) == band


def test_vote_matrix_and_report():
    sets = [
        AnnotationSet("i1", tuple((f"w{j}", A) for j in range(5))),
        AnnotationSet("i2", tuple((f"w{j}", lab) for j, lab in enumerate([B, B, B, A, A]))),
    ]
    m, cats = vote_matrix([s.votes for s in sets])
    # columns sort by label key: Entertain before Share
    assert m.tolist() == [[0, 5], [3, 2]] and cats == [B, A]
    r = agreement_report(sets)
    assert (r.n_items, r.n_raters, r.n_categories) == (2, 5, 2)
    assert r.fleiss_kappa == pytest.approx(fleiss_oracle([[5, 0], [2, 3]]), abs=1e-12)


def test_annotation_set_validation():
    with pytest.raises(WrongRaterCount):
        AnnotationSet("i", (("w1", A),))
    with pytest.raises(ValidationError):
        AnnotationSet("i", tuple(("w1", A) for _ in range(5)))
    assert AnnotationSet("i", (("e", A),), "Expert").votes == [A]


def _hc(label):
    return ConsensusOutcome(OutcomeKind.HIGH_CONSENSUS, label)


NM = ConsensusOutcome(OutcomeKind.NO_MAJORITY)


def test_distribution_example():
    P, S = IntentLabel.category("Promote"), IntentLabel.category("Share")
    d = intention_distribution({"1": _hc(P), "2": _hc(P), "3": _hc(S), "4": NM})
    assert d.shares == {"Promote": 50.0, "NC-UN": 25.0, "Share": 25.0}
    assert d.nc_un_percent == 25.0


def test_distribution_all_uncertain():
    d = intention_distribution({str(i): _hc(U) for i in range(3)})
    assert d.shares == {"Uncertain": 100.0} and d.nc_un_percent == 100.0


def test_distribution_low_consensus_and_empty():
    d = intention_distribution({"1": ConsensusOutcome(OutcomeKind.SPLIT_DECISION, A), "2": _hc(A)})
    assert d.shares == {"Low consensus": 50.0, "Share": 50.0}
    assert intention_distribution({}).n_items == 0


@given(st.lists(st.lists(st.sampled_from(SYMBOLS), min_size=5, max_size=5), min_size=1, max_size=30))
def test_distribution_partitions_items(votes):
    outcomes = {str(i): classify_consensus(v) for i, v in enumerate(votes)}
    d = intention_distribution(outcomes)
    assert sum(d.shares.values()) == pytest.approx(100.0)


def test_delta_examples():
    before = {str(i): NM for i in range(4)}
    after = {str(i): _hc(A) for i in range(4)}
    assert agreement_delta(before, after).gain_fraction == 1.0
    assert agreement_delta(before, before).gain_fraction == 0.0
    assert agreement_delta(after, after).gain_fraction == 0.0
    with pytest.raises(IdMismatch):
        agreement_delta(before, {"0": NM})


def test_delta_partial_and_uncertain():
    before = {"a": NM, "b": _hc(U), "c": NM, "d": _hc(A)}
    after = {"a": ConsensusOutcome(OutcomeKind.COMPETING_CONSENSUS, B), "b": _hc(U), "c": NM, "d": NM}
    rep = agreement_delta(before, after)
    assert (rep.n_nc_un_before, rep.n_gained) == (3, 1)
    assert rep.gain_fraction == pytest.approx(1 / 3)


def test_load_annotations(tmp_path, tax):
    p = tmp_path / "a.tsv"
    rows = ["item_id\trater_id\tlabel\tstudy_phase"]
    rows += [f"t1\tw{j}\tShare\tStudy1" for j in range(4)] + ["t1\tw4\tuncertain\tStudy1"]
    rows += ["t1\texp\tpromote\tExpert"]
    p.write_text("\n".join(rows) + "\n", encoding="utf-8")
    sets = load_annotations(p, tax)
    assert {(s.item_id, s.study_phase) for s in sets} == {("t1", "Study1"), ("t1", "Expert")}
    out = consensus_outcomes([s for s in sets if s.study_phase == "Study1"])
    assert out["t1"] == _hc(A)


def test_load_annotations_errors(tmp_path, tax):
    p = tmp_path / "a.tsv"
    p.write_text("t1\tw0\tbanter\tStudy1\n", encoding="utf-8")
    with pytest.raises(UnknownLabel, match=":1:"):
        load_annotations(p, tax)
    p.write_text("t1\tw0\tShare\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_annotations(p, tax)
    p.write_text("".join(f"t1\tw{j}\tShare\tStudy1\n" for j in range(4)), encoding="utf-8")
    with pytest.raises(WrongRaterCount):
        load_annotations(p, tax)
