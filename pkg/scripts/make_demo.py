#!/usr/bin/env python3
"""Generate the synthetic demo data shipped under src/urlintent/data/demo/.

The output is committed; rerunning with the same seed reproduces it exactly.

    python scripts/make_demo.py [--seed 2011]
"""

import argparse
import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "urlintent" / "data" / "demo"

# topic id -> (title, facets, target intent, {intent: [templates]})
TOPICS = {
    "MB001": (
        "thorpe return in 2012 olympics",
        "I/U/C",
        "Share",
        {
            "Share": [
                "Ian Thorpe confirms his return to the pool for the 2012 Olympics",
                "Report: Thorpe return to swimming aims at London 2012 olympics",
                "Thorpe announces comeback, targets 2012 Olympics relay spot",
                "Swimming Australia says Thorpe return is on track for 2012",
            ],
            "Offer": [
                "Background on Thorpe and the 2012 olympics qualifying rules, useful read",
                "Here is how olympic trials work if you wonder about the Thorpe return",
            ],
            "Converse": [
                "Thorpe return in 2012? He is past his best, read this",
                "Actually the Thorpe return makes sense, evidence from his times",
            ],
            "Entertain": [
                "clue : arrested development edition : sure there's always money in the banana stand -- olympics return",
                "lol the thorpe return meme for 2012 olympics is hilarious",
            ],
            "Promote": [
                "Buy 2012 olympics swimming goggles now 30% off, Thorpe style",
                "Olympics 2012 return flights deal, book now",
            ],
        },
    ),
    "MB002": (
        "coffee prices rise",
        "I/U/O",
        "Share",
        {
            "Share": [
                "Coffee prices rise to a 14 year high as harvests fail",
                "Breaking: global coffee prices rise again after frost in Brazil",
                "Report says coffee prices will rise through next year",
                "Why coffee prices rise: supply chain data explained",
            ],
            "Offer": [
                "Tips to save money as coffee prices rise, brew at home guide",
                "How to pick cheaper beans now that coffee prices rise",
            ],
            "Converse": [
                "Coffee prices rise and nobody talks about farmers, agree?",
                "I disagree that coffee prices rise because of demand, proof here",
            ],
            "Promote": [
                "Coffee prices rise but our shop has a sale, order today",
                "Beat the price rise: coffee subscription discount code inside",
                "Buy our coffee before prices rise, 20% off this week",
            ],
            "Entertain": [
                "When coffee prices rise again lol my face",
            ],
        },
    ),
    "MB003": (
        "electric car battery recycling",
        "I/D/O",
        "Offer",
        {
            "Share": [
                "Startup opens electric car battery recycling plant in Nevada",
                "Government report on electric car battery recycling targets",
            ],
            "Offer": [
                "Guide: how electric car battery recycling actually works",
                "Tutorial on electric car battery recycling at home, safety tips",
                "Here is how battery recycling recovers lithium from electric cars",
                "Factual overview of electric car battery recycling rates",
            ],
            "Converse": [
                "Electric car battery recycling is overhyped, wrong numbers everywhere",
                "Battery recycling for electric cars is the real climate fight, agree",
            ],
            "Promote": [
                "Join our electric car battery recycling webinar, register now",
                "Shop recycled electric car battery packs, deal of the day",
            ],
            "Request": [
                "Anyone know a electric car battery recycling service near Austin?",
                "What do you think of this battery recycling plan for electric cars?",
            ],
        },
    ),
    "MB004": (
        "jazz festival tickets",
        "T/D/C",
        "Promote",
        {
            "Promote": [
                "Jazz festival tickets on sale now, early bird discount",
                "Get your jazz festival tickets tonight, live at the harbor stage",
                "Buy jazz festival tickets here, weekend passes almost gone",
                "Jazz festival tickets giveaway and sale, order before Friday",
            ],
            "Share": [
                "City confirms jazz festival dates, tickets announced next month",
                "Report: jazz festival ticket sales break records",
            ],
            "Request": [
                "Anyone selling jazz festival tickets? please share",
                "Help me find two jazz festival tickets for Saturday",
            ],
            "Entertain": [
                "Jazz festival tickets cost more than my rent lol",
                "Funny video from last year's jazz festival ticket queue",
            ],
            "Converse": [
                "Jazz festival tickets are overpriced, I disagree with the lineup",
            ],
        },
    ),
    "MB005": (
        "marathon training plan",
        "I/U/O",
        "Offer",
        {
            "Offer": [
                "Marathon training plan for beginners: 16 week guide",
                "How to build a marathon training plan, tips from coaches",
                "Free marathon training plan with long run schedule",
                "Marathon training plan advice: recovery and nutrition tips",
            ],
            "Share": [
                "Study on marathon training plans and injury rates published",
                "I finished my first marathon after this training plan, so proud",
            ],
            "Promote": [
                "Buy our premium marathon training plan app, 50% off",
                "Marathon training plan coaching, register for our running camp",
            ],
            "Converse": [
                "Marathon training plans that skip speed work are wrong, evidence",
            ],
            "Entertain": [
                "My marathon training plan: couch, snacks, lol",
            ],
            "Request": [
                "Thoughts? Is this marathon training plan too aggressive for me",
            ],
        },
    ),
}

NOISE = [
    "Lovely sunset over the bay this evening",
    "Monday again, need more sleep",
    "New blog post about gardening in small spaces",
    "Watching the game with friends tonight",
    "Traffic on the bridge is terrible right now",
    "Just adopted a puppy, meet Biscuit",
    "Reading a great novel about sailing",
    "Our team shipped a new release today",
    "Rainy weekend plans: soup and movies",
    "Thinking about learning the guitar",
    "Olympic pool in our town reopens next week",
    "Price of bread went up at the corner shop",
    "My car needs new tires before winter",
    "Festival season is coming, any favorites",
    "Started running again after a long break",
    "City council meeting moved to Thursday",
    "Museum night was a blast",
    "Learning to bake sourdough, day three",
    "Best pizza in town, fight me",
    "Podcast recommendation thread incoming",
]

DOMAINS = {
    "Share": ["news.example.com", "bbc.example.org", "reuters.example.com"],
    "Offer": ["guides.example.org", "howto.example.com"],
    "Converse": ["blog.example.net", "forum.example.org"],
    "Promote": ["shop.example.com", "store.example.net"],
    "Entertain": ["memes.example.com", "funny.example.net"],
    "Request": ["petition.example.org", "ask.example.com"],
}

RELEVANCE = {"Share": (1, 2), "Offer": (1, 2), "Converse": (0, 1), "Promote": (0, 0), "Entertain": (0, 0), "Request": (0, 1)}
# target intent of transactional topics flips which intents are relevant
RELEVANCE_TRANSACTIONAL = {"Promote": (1, 2), "Request": (1, 1), "Share": (0, 1), "Offer": (0, 0), "Converse": (0, 0), "Entertain": (0, 0)}

ALL_INTENTS = ["Share", "Entertain", "Offer", "Converse", "Promote", "Request", "uncertain"]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2011)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    OUT.mkdir(parents=True, exist_ok=True)

    records, gold, qrels = [], {}, []
    n = 0
    for topic, (title, facets, target, by_intent) in TOPICS.items():
        for intent, texts in by_intent.items():
            for text in texts:
                n += 1
                tid = f"t{n:03d}"
                ttype = "reply" if intent in ("Converse", "Request") and rng.random() < 0.6 else rng.choice(
                    ["regular", "regular", "regular", "quoted"]
                )
                has_url = rng.random() < 0.9
                urls, docs = [], []
                if has_url:
                    url = f"https://{rng.choice(DOMAINS[intent])}/{topic.lower()}/{n}"
                    urls.append(url)
                    fetched = rng.random() < 0.85
                    docs.append(
                        {
                            "url": url,
                            "title": f"{title.title()} - {intent} page" if fetched else "",
                            "body_text": f"Linked page about {title}." if fetched else "",
                            "fetch_ok": fetched,
                        }
                    )
                    text_out = f"{text} {url}"
                    gold[tid] = intent
                else:
                    text_out = text
                rec = {
                    "id": tid,
                    "text": text_out,
                    "tweet_type": ttype,
                    "urls": urls,
                    "linked_docs": docs,
                    "likes": rng.choice([0, 0, 0, 1, 2, 3, 5, 8, 14]),
                    "replies": rng.choice([0, 0, 0, 1, 2]),
                    "retweets": rng.choice([0, 0, 1, 4]),
                    "parent_context": None,
                    "hashtags": [],
                    "mentions": [],
                }
                if ttype == "reply":
                    rec["parent_context"] = [
                        {"id": f"{tid}p", "text": f"What is new with {title}?", "tweet_type": "regular"}
                    ]
                records.append(rec)
                table = RELEVANCE_TRANSACTIONAL if facets.startswith("T") else RELEVANCE
                lo, hi = table[intent]
                qrels.append((topic, tid, rng.randint(lo, hi)))
    subjects = ["My neighbor", "The bakery", "Our office", "The library", "A friend", "The park"]
    actions = ["finally fixed the fence", "hosts a quiz night", "got a new mural", "is closed for repairs"]
    filler = [f"{s_} {a}" for s_ in subjects for a in actions]
    noise = NOISE + filler[: 100 - n - len(NOISE)]
    for text in noise:
        n += 1
        tid = f"t{n:03d}"
        has_url = rng.random() < 0.5
        url = f"https://blog.example.net/misc/{n}"
        records.append(
            {
                "id": tid,
                "text": f"{text} {url}" if has_url else text,
                "tweet_type": "regular",
                "urls": [url] if has_url else [],
                "linked_docs": [{"url": url, "title": "", "body_text": "", "fetch_ok": False}] if has_url else [],
                "likes": rng.choice([0, 0, 1, 3, 12]),
                "replies": 0,
                "retweets": rng.choice([0, 0, 2]),
                "parent_context": None,
                "hashtags": [],
                "mentions": [],
            }
        )
        if has_url:
            gold[tid] = rng.choice(["Share", "Converse", "uncertain"])
    assert len(records) == 100, len(records)

    with (OUT / "corpus.jsonl").open("w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")

    with (OUT / "topics.txt").open("w", encoding="utf-8", newline="\n") as fh:
        for topic, (title, *_rest) in TOPICS.items():
            fh.write(f"<top>\n<num> Number: {topic} </num>\n<title> {title} </title>\n</top>\n\n")

    with (OUT / "qrels.txt").open("w", encoding="utf-8", newline="\n") as fh:
        for topic, tid, grade in qrels:
            fh.write(f"{int(topic[2:])} 0 {tid} {grade}\n")

    with (OUT / "tweet_labels.tsv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("tweet_id\tlabel\n")
        for tid in sorted(gold):
            fh.write(f"{tid}\t{gold[tid]}\n")

    with (OUT / "query_labels.tsv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("query_id\tfacets\tlabel\n")
        for topic, (_, facets, target, _) in TOPICS.items():
            fh.write(f"{topic}\t{facets}\t{target}\n")

    # five crowd raters on the first 40 labeled tweets; each picks the gold
    # intent with probability 0.7, else a uniform draw over all intents
    with (OUT / "study1.tsv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("item_id\trater_id\tlabel\tstudy_phase\n")
        for tid in sorted(gold)[:40]:
            for w in range(1, 6):
                lab = gold[tid] if rng.random() < 0.7 else rng.choice(ALL_INTENTS)
                fh.write(f"{tid}\tw{w}\t{lab}\tStudy1\n")
        for tid in sorted(gold)[:40]:
            fh.write(f"{tid}\texpert\t{gold[tid]}\tExpert\n")

    codes = [
        "to share a news article", "To share  a news article", "to report breaking news",
        "to answer a question", "to provide an answer to a question", "to advertise a product",
        "to sell something", "to make people laugh", "to share a meme", "to ask for opinions",
    ]
    with (OUT / "codes.tsv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("id\ttext\n")
        for i, c in enumerate(codes, start=1):
            fh.write(f"{i}\t{c}\n")
    groupings = [
        {"worker_id": "g1", "groups": {"news": [1, 2, 3], "help": [4, 5], "ads": [6, 7], "fun": [8, 9], "ask": [10]},
         "identity_pairs": [[1, 2], [4, 5]]},
        {"worker_id": "g2", "groups": {"news": [1, 2, 3], "answers": [4, 5, 10], "selling": [6, 7], "humor": [8, 9]},
         "identity_pairs": [[1, 2], [4, 5], [8, 9]]},
        {"worker_id": "g3", "groups": {"information": [1, 2, 3, 4, 5], "ads": [6, 7], "fun": [8, 9], "ask": [10]},
         "identity_pairs": [[1, 2]]},
        {"worker_id": "g4", "groups": {"news": [1, 2, 3], "help": [4, 5], "ads": [6, 7, 10], "fun": [8, 9]},
         "identity_pairs": [[1, 2], [4, 5], [6, 7]]},
        {"worker_id": "g5", "groups": {"news": [1, 2], "reporting": [3], "help": [4, 5, 10], "ads": [6, 7], "fun": [8, 9]},
         "identity_pairs": [[1, 2]]},
    ]
    with (OUT / "groupings.jsonl").open("w", encoding="utf-8", newline="\n") as fh:
        for g in groupings:
            fh.write(json.dumps(g) + "\n")

    (OUT / "config.yaml").write_text(
        "# Demo run config; paths are relative to this file.\n"
        "corpus: corpus.jsonl\n"
        "topics: topics.txt\n"
        "qrels: qrels.txt\n"
        "labels: tweet_labels.tsv\n"
        "query_labels: query_labels.tsv\n"
        "annotations: study1.tsv\n"
        "k1: 1.2\n"
        "b: 0.75\n"
        "k: 50\n"
        "stats_scope: candidates\n"
        "repeat: 1\n"
        "gain: linear\n"
        "output_dir: out\n",
        encoding="utf-8",
    )


if __name__ == "__main__":
    main()
