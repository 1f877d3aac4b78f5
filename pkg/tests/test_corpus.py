from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from urlintent.corpus import (
    LENGTH_BUCKETS,
    REACTION_BUCKETS,
    Corpus,
    LinkedDoc,
    TweetRecord,
    bucket_length,
    bucket_reaction_total,
    bucket_reactions,
    corpus_stats,
    dumps_record,
    ingest,
    write_corpus,
)
from urlintent.errors import UnknownId, ValidationError
from urlintent.taxonomy import UNCERTAIN_LABEL, IntentLabel


def _write_lines(path, objs):
    path.write_text("".join(json.dumps(o) + "\n" for o in objs), encoding="utf-8")
    return path


def test_ingest_three_records(tmp_path):
    p = _write_lines(tmp_path / "c.jsonl", [{"id": f"t{i}", "text": "x"} for i in range(3)])
    c = ingest(p)
    assert len(c) == 3 and not c.errors


def test_bad_record_rejected_others_kept(tmp_path):
    objs = [{"id": "a", "text": "x"}, {"id": "b", "text": "y", "likes": -1}, {"id": "c", "text": "z"}]
    c = ingest(_write_lines(tmp_path / "c.jsonl", objs))
    assert [r.id for r in c] == ["a", "c"]
    assert c.errors[0][0] == 2 and "likes" in c.errors[0][1]


def test_empty_file_is_empty_corpus(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text("", encoding="utf-8")
    assert len(ingest(p)) == 0


def test_malformed_json_and_duplicates_collected(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"id":"a","text":"x"}\n{oops\n{"id":"a","text":"y"}\n', encoding="utf-8")
    c = ingest(p)
    assert len(c) == 1 and [e[0] for e in c.errors] == [2, 3]


def test_require_urls(tmp_path):
    objs = [{"id": "a", "text": "x", "urls": ["http://e.com"]}, {"id": "b", "text": "y"}]
    c = ingest(_write_lines(tmp_path / "c.jsonl", objs), require_urls=True)
    assert [r.id for r in c] == ["a"]


def test_record_validation():
    with pytest.raises(ValidationError):
        TweetRecord("a", "x", tweet_type="retweet")
    with pytest.raises(ValidationError):
        TweetRecord("a", "x", urls=("u",), linked_docs=())
    with pytest.raises(ValidationError):
        TweetRecord("a", "x", parent_context=(TweetRecord("p", "y"),))
    with pytest.raises(ValidationError):
        LinkedDoc("u", title="t", fetch_ok=False)
    with pytest.raises(ValidationError):
        TweetRecord("a", "x", likes=True)


def test_missing_linked_docs_default_to_unfetched():
    r = TweetRecord.from_dict({"id": "a", "text": "x", "urls": ["u1", "u2"]})
    assert [d.fetch_ok for d in r.linked_docs] == [False, False]


def test_corpus_lookup():
    c = Corpus([TweetRecord("a", "x")])
    assert "a" in c and c["a"].text == "x"
    with pytest.raises(UnknownId):
        c["b"]
    with pytest.raises(ValidationError):
        Corpus([TweetRecord("a", "x"), TweetRecord("a", "y")])


def test_documents_with_linked_text():
    r = TweetRecord("a", "tweet", urls=("u",), linked_docs=(LinkedDoc("u", "Title", "Body", True),))
    c = Corpus([r])
    assert list(c.documents()) == [("a", "tweet")]
    assert list(c.documents(include_linked=True)) == [("a", "tweet Title Body")]


@pytest.mark.parametrize(
    "n, bucket",
    [(0, "<35"), (34, "<35"), (35, "35–70"), (70, "35–70"), (71, "71–105"), (105, "71–105"),
     (106, "106–175"), (175, "106–175"), (176, ">175")],
)
def test_length_boundaries(n, bucket):
    assert bucket_length("x" * n) == bucket


def test_length_counts_code_points():
    assert bucket_length("é" * 34) == "<35"
    assert bucket_length("😀" * 35) == "35–70"


@pytest.mark.parametrize("likes, replies, retweets, bucket", [(0, 0, 0, "0"), (2, 2, 2, "6–10"), (10, 1, 0, ">10"),
                                                             (1, 0, 0, "1–5"), (5, 0, 0, "1–5"), (10, 0, 0, "6–10")])
def test_reaction_buckets(likes, replies, retweets, bucket):
    assert bucket_reactions(TweetRecord("a", "x", likes=likes, replies=replies, retweets=retweets)) == bucket


def _length_oracle(n):
    # inclusive upper edges: each bucket claims n if n is at or below its edge
    edges = [(34, "<35"), (70, "35–70"), (105, "71–105"), (175, "106–175")]
    hits = [b for e, b in edges if n <= e]
    return hits[0] if hits else ">175"


@given(st.integers(min_value=0, max_value=400))
def test_length_bucket_totality(n):
    b = bucket_length("a" * n)
    assert b in LENGTH_BUCKETS and b == _length_oracle(n)


@given(st.integers(min_value=0, max_value=10_000))
def test_reaction_bucket_totality(n):
    matches = [
        b for b, ok in zip(REACTION_BUCKETS, (n == 0, 1 <= n <= 5, 6 <= n <= 10, n > 10)) if ok
    ]
    assert matches == [bucket_reaction_total(n)]


def test_negative_reaction_total():
    with pytest.raises(ValueError):
        bucket_reaction_total(-1)


_text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=40)
_ids = st.text("abcdefgh0123456789", min_size=1, max_size=6)


@st.composite
def records(draw, depth=1):
    urls = draw(st.lists(_text, max_size=2))
    docs = []
    for u in urls:
        ok = draw(st.booleans())
        docs.append(LinkedDoc(u, draw(_text) if ok else "", draw(_text) if ok else "", ok))
    ttype = draw(st.sampled_from(["regular", "reply", "quoted"]))
    parents = None
    if ttype != "regular" and depth > 0 and draw(st.booleans()):
        parents = tuple(draw(st.lists(records(depth=0), max_size=2)))
    return TweetRecord(
        id=draw(_ids),
        text=draw(_text),
        tweet_type=ttype,
        urls=tuple(urls),
        linked_docs=tuple(docs),
        likes=draw(st.integers(0, 10**6)),
        replies=draw(st.integers(0, 10**6)),
        retweets=draw(st.integers(0, 10**6)),
        parent_context=parents,
        hashtags=tuple(draw(st.lists(_text, max_size=2))),
        mentions=tuple(draw(st.lists(_text, max_size=2))),
    )


@settings(max_examples=200, deadline=None)
@given(records())
def test_serialize_round_trip(rec):
    again = TweetRecord.from_dict(json.loads(dumps_record(rec)))
    assert again == rec
    assert dumps_record(again) == dumps_record(rec)


def test_file_round_trip_is_byte_exact(tmp_path):
    recs = [
        TweetRecord("a", "naïve “quote” 😀", urls=("http://x",), linked_docs=(LinkedDoc("http://x"),)),
        TweetRecord("b", "reply", tweet_type="reply", likes=3, parent_context=(TweetRecord("p", "q"),)),
    ]
    p1, p2 = tmp_path / "1.jsonl", tmp_path / "2.jsonl"
    write_corpus(recs, p1)
    write_corpus(ingest(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_stats_three_records_no_labels():
    c = Corpus([TweetRecord("a", "x"), TweetRecord("b", "y", "reply"), TweetRecord("c", "z", "reply")])
    table = corpus_stats(c)
    (row,) = table.section("tweets type").rows
    assert row[0] == "All" and row[1] == 3
    assert [round(p, 1) for p in row[2]] == [33.3, 66.7, 0.0]


def test_stats_empty_corpus():
    table = corpus_stats(Corpus([]))
    assert table.is_empty
    assert table.to_tsv() == "section\tgroup\tn\tcolumn\tpercent\n"


def test_stats_groups_and_nc_un(tax):
    c = Corpus([TweetRecord(i, "x") for i in "abcd"])
    labels = {
        "a": IntentLabel.category("Share"),
        "b": IntentLabel.klass("share.sport"),
        "c": UNCERTAIN_LABEL,
        "d": None,
    }
    rows = corpus_stats(c, labels, tax).section("tweets type").rows
    assert [(g, n) for g, n, _ in rows] == [("All", 4), ("Share", 2), ("NC-UN", 2)]


def test_stats_class_labels_need_taxonomy():
    c = Corpus([TweetRecord("a", "x")])
    with pytest.raises(ValueError):
        corpus_stats(c, {"a": IntentLabel.klass("share.sport")})


def test_stats_unknown_label_id():
    with pytest.raises(UnknownId):
        corpus_stats(Corpus([]), {"zz": IntentLabel.category("Share")})


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["regular", "reply", "quoted"]), st.integers(0, 300),
                          st.integers(0, 30), st.sampled_from([None, "Share", "Promote", "Offer"])),
                min_size=1, max_size=40))
def test_stats_rows_sum_to_100(rows):
    recs = [TweetRecord(f"t{i}", "x" * n, tt, likes=r) for i, (tt, n, r, _) in enumerate(rows)]
    labels = {f"t{i}": (IntentLabel.category(lab) if lab else None) for i, (*_, lab) in enumerate(rows)}
    table = corpus_stats(Corpus(recs), labels)
    for sec in table.sections:
        for _, n, pcts in sec.rows:
            assert n > 0 and abs(sum(pcts) - 100.0) <= 0.1
