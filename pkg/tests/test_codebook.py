from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from urlintent.codebook import (
    IntentionCode,
    WorkerGrouping,
    consensus_grouping,
    consensus_merge,
    dedupe_exact,
    load_codes,
    load_groupings,
    normalize_code,
    strict_majority,
)
from urlintent.errors import ParseError, UniverseMismatch, ValidationError


def _codes(*texts):
    return [IntentionCode(i, t) for i, t in enumerate(texts, start=1)]


def _wg(wid, groups, pairs=()):
    return WorkerGrouping(
        wid, {k: frozenset(v) for k, v in groups.items()}, frozenset(frozenset(p) for p in pairs)
    )


def test_normalize():
    assert normalize_code("  To share\t news ") == "to share news"


def test_dedupe_examples():
    kept, mapping = dedupe_exact(_codes("to share news", "To share  news"))
    assert [c.id for c in kept] == [1] and mapping == {1: 1, 2: 1}
    distinct = _codes("a", "b", "c")
    assert dedupe_exact(distinct)[0] == distinct
    near = _codes("to answer a question", "to provide an answer to a question")
    assert dedupe_exact(near)[0] == near


@given(st.lists(st.sampled_from(["a", "A", " a ", "b", "B  ", "c d", "C  D"]), min_size=1, max_size=12))
def test_dedupe_idempotent(texts):
    kept, mapping = dedupe_exact(_codes(*texts))
    again, _ = dedupe_exact(kept)
    assert again == kept
    assert set(mapping) == set(range(1, len(texts) + 1))
    assert len({normalize_code(c.text) for c in kept}) == len(kept)


def test_empty_code_rejected():
    with pytest.raises(ValidationError):
        IntentionCode(1, "   ")


def test_grouping_validation():
    with pytest.raises(ValidationError):
        _wg("w", {"x": {1, 2}, "y": {2, 3}})
    with pytest.raises(ValidationError):
        _wg("w", {"x": {1}}, [(1, 9)])
    with pytest.raises(ValidationError):
        _wg("w", {"x": set()})


def _five(pair_flags):
    groups = {"g": {1, 2, 3}}
    return [_wg(f"w{i}", groups, [(1, 2)] if flagged else []) for i, flagged in enumerate(pair_flags)]


def test_merge_three_of_five():
    res = consensus_merge(_five([1, 1, 1, 0, 0]))
    assert frozenset({1, 2}) in res.classes and res.n_discarded == 1
    assert res.representative[2] == 1


def test_merge_two_of_five():
    res = consensus_merge(_five([1, 1, 0, 0, 0]))
    assert res.n_discarded == 0


def test_strict_majority():
    assert [strict_majority(n) for n in (1, 2, 3, 4, 5)] == [1, 2, 2, 3, 3]


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        consensus_grouping([_wg("a", {"x": {1, 2}}), _wg("b", {"x": {1, 3}})])
    with pytest.raises(ValidationError):
        consensus_grouping([])


def test_grouping_all_agree():
    gs = [_wg(f"w{i}", {"news": {1, 2, 3}}) for i in range(5)]
    (g,) = consensus_grouping(gs)
    assert g.members == {1, 2, 3} and g.name == "news"


def test_grouping_transitive_component():
    ab = {"ab": {1, 2}, "c": {3}}
    bc = {"bc": {2, 3}, "a": {1}}
    apart = {"x": {1}, "y": {2}, "z": {3}}
    gs = [_wg("1", ab), _wg("2", ab), _wg("3", ab), _wg("4", bc), _wg("5", bc)]
    # a-b backed by 3, b-c only by 2
    assert [g.members for g in consensus_grouping(gs)] == [{1, 2}, {3}]
    gs = [_wg("1", ab), _wg("2", ab), _wg("3", {"all": {1, 2, 3}}), _wg("4", bc), _wg("5", bc)]
    # a-b: 3, b-c: 3, a-c: 1 -> one component through b
    (g,) = consensus_grouping(gs)
    assert g.members == {1, 2, 3}
    assert _connected_oracle(gs, 3) == [{1, 2, 3}]
    singles = [_wg(str(i), apart) for i in range(5)]
    assert [g.members for g in consensus_grouping(singles)] == [{1}, {2}, {3}]


def test_group_names_tie_break():
    gs = [_wg("1", {"beta": {1, 2}}), _wg("2", {"alpha": {1, 2}})]
    (g,) = consensus_grouping(gs)
    assert g.name == "alpha"


def _connected_oracle(groupings, threshold):
    """Partition by transitive closure of the 'grouped together by >= threshold workers' relation."""
    universe = sorted(groupings[0].universe)
    idx = {x: i for i, x in enumerate(universe)}
    n = len(universe)
    reach = [[i == j for j in range(n)] for i in range(n)]
    for a in universe:
        for b in universe:
            if a != b:
                cnt = sum(any(a in m and b in m for m in g.groups.values()) for g in groupings)
                if cnt >= threshold:
                    reach[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    parts = []
    for x in universe:
        part = {y for y in universe if reach[idx[x]][idx[y]]}
        if part not in parts:
            parts.append(part)
    return sorted(parts, key=min)


@st.composite
def groupings(draw):
    n_codes = draw(st.integers(1, 8))
    n_workers = draw(st.integers(1, 6))
    out = []
    for w in range(n_workers):
        labels = draw(st.lists(st.integers(0, 3), min_size=n_codes, max_size=n_codes))
        groups = {}
        for code, lab in enumerate(labels, start=1):
            groups.setdefault(f"g{lab}", set()).add(code)
        out.append(_wg(f"w{w}", groups))
    return out


@settings(max_examples=150, deadline=None)
@given(groupings(), st.integers(1, 6))
def test_grouping_matches_oracle_and_partitions(gs, threshold):
    got = [set(g.members) for g in consensus_grouping(gs, threshold)]
    assert got == _connected_oracle(gs, threshold)
    flat = [x for g in got for x in g]
    assert sorted(flat) == sorted(gs[0].universe)


@settings(max_examples=100, deadline=None)
@given(groupings(), st.integers(1, 5))
def test_higher_threshold_only_refines(gs, t):
    low = consensus_grouping(gs, t)
    high = consensus_grouping(gs, t + 1)
    for g in high:
        assert any(g.members <= h.members for h in low)


def test_loaders(tmp_path):
    c = tmp_path / "codes.tsv"
    c.write_text("id\ttext\n1\tto share news\n2\tto sell\n", encoding="utf-8")
    assert load_codes(c) == _codes("to share news", "to sell")
    c.write_text("x\tto share news\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_codes(c)
    g = tmp_path / "g.jsonl"
    g.write_text(json.dumps({"worker_id": "w", "groups": {"a": [1, 2]}, "identity_pairs": [[1, 2]]}) + "\n",
                 encoding="utf-8")
    (wg,) = load_groupings(g)
    assert wg.universe == {1, 2} and frozenset({1, 2}) in wg.identity_pairs
    g.write_text('{"worker_id": "w"}\n', encoding="utf-8")
    with pytest.raises(ParseError, match=":1"):
        load_groupings(g)


def test_shipped_demo_codebook(demo_dir):
    codes = load_codes(demo_dir / "codes.tsv")
    gs = load_groupings(demo_dir / "groupings.jsonl")
    kept, _ = dedupe_exact(codes)
    assert len(codes) == 10 and len(kept) == 9
    assert consensus_merge(gs).n_discarded == 2
    assert [g.name for g in consensus_grouping(gs)] == ["news", "help", "ads", "fun", "ask"]
