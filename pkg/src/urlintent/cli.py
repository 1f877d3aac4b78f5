"""``urlintent`` command line entry point.

Every subcommand takes explicit flags; values not given on the command line
fall back to a YAML run config (``--config`` or ``$URLINTENT_CONFIG``).
Outputs are written atomically and contain no timestamps, so reruns with
the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable, Sequence

import yaml

from . import annotations as ann
from . import codebook, corpus as corpus_mod, evaluation, index as index_mod, intent, rerank as rerank_mod
from .errors import UrlIntentError
from .taxonomy import (
    default_taxonomy,
    load_mappings,
    load_taxonomy,
    shipped_mappings_path,
    shipped_taxonomy_path,
)

log = logging.getLogger("urlintent")
CONFIG_ENV = "URLINTENT_CONFIG"
PATH_FIELDS = ("taxonomy", "mappings", "corpus", "labels", "query_labels", "qrels", "topics", "policy", "rules", "annotations")


@dataclass
class RunConfig:
    taxonomy: Path | None = None
    mappings: Path | None = None
    corpus: Path | None = None
    labels: Path | None = None
    query_labels: Path | None = None
    qrels: Path | None = None
    topics: Path | None = None
    policy: Path | None = None
    rules: Path | None = None
    annotations: Path | None = None
    k1: float = 1.2
    b: float = 0.75
    k: int = 50
    include_linked: bool = False
    stats_scope: str = "candidates"
    repeat: int = 1
    gain: str = "linear"
    output_dir: Path = field(default_factory=lambda: Path("out"))

    @classmethod
    def from_dict(cls, d: dict, base: Path | None = None) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise UrlIntentError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(d)
        for name in (*PATH_FIELDS, "output_dir"):
            if kw.get(name) is not None:
                p = Path(kw[name])
                kw[name] = p if p.is_absolute() or base is None else base / p
        return cls(**kw)

    def to_dict(self) -> dict:
        return {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(self).items()}

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        path = Path(path)
        doc = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(doc, dict):
            raise UrlIntentError(f"{path}: config must be a mapping")
        return cls.from_dict(doc, base=path.parent)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(yaml.safe_dump(self.to_dict(), sort_keys=False), encoding="utf-8")

    def check_paths(self, names: Sequence[str]) -> None:
        for name in names:
            p = getattr(self, name)
            if p is None:
                raise UrlIntentError(f"missing required input: --{name.replace('_', '-')}")
            if not Path(p).exists():
                raise UrlIntentError(f"{name} file does not exist: {p}")

    @property
    def params(self) -> index_mod.Bm25Params:
        return index_mod.Bm25Params(self.k1, self.b)


def write_atomic(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def _config(args: argparse.Namespace) -> RunConfig:
    cfg_path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    cfg = RunConfig.load(cfg_path) if cfg_path else RunConfig()
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            setattr(cfg, f.name, Path(value) if f.name in (*PATH_FIELDS, "output_dir") else value)
    return cfg


def _taxonomy(cfg: RunConfig):
    if cfg.taxonomy is None and cfg.mappings is None:
        return default_taxonomy()
    return load_taxonomy(cfg.taxonomy or shipped_taxonomy_path(), cfg.mappings or shipped_mappings_path())


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- taxonomy ----------------------------------------------------------------


def cmd_taxonomy(args, cfg: RunConfig) -> int:
    if args.action == "validate":
        tax = load_taxonomy(args.file or cfg.taxonomy or shipped_taxonomy_path())
        mpath = args.mappings or cfg.mappings or shipped_mappings_path()
        tax = tax.with_mappings(load_mappings(mpath))
        counts = ", ".join(f"{c.id}: {len(c.classes)}" for c in tax.categories)
        _emit(f"ok: {len(tax.categories)} categories / {len(tax.classes)} classes ({counts}); "
              f"{len(tax.mappings)} prior mappings; version {tax.version}")
        return 0
    tax = _taxonomy(cfg)
    if args.action == "map":
        _emit("\n".join(tax.map_prior(args.source, args.label)))
        return 0
    if args.action == "resolve":
        label = tax.resolve_label(args.label)
        _emit(f"{label.kind}\t{label.key}\t{tax.category_of(label) or '-'}")
        return 0
    # list
    lines = []
    for c in tax.categories:
        lines.append(f"{c.id}\t{c.display}\t{c.definition}")
        lines += [f"  {k.id}\t{k.name}\t{k.illustrative_example}" for k in c.classes]
    _emit("\n".join(lines))
    return 0


# --- corpus / annotations ----------------------------------------------------


def cmd_ingest(args, cfg: RunConfig) -> int:
    cfg.check_paths(["corpus"])
    corp = corpus_mod.ingest(cfg.corpus, require_urls=args.require_urls)
    lines = [f"records\t{len(corp)}", f"rejected\t{len(corp.errors)}"]
    lines += [f"line {n}\t{msg}" for n, msg in corp.errors]
    _emit("\n".join(lines))
    if args.out:
        write_atomic(args.out, "".join(corpus_mod.dumps_record(r) + "\n" for r in corp))
    return 0


def _study_sets(cfg: RunConfig, tax, phase: str):
    sets = [s for s in ann.load_annotations(cfg.annotations, tax) if s.study_phase == phase]
    if not sets:
        raise UrlIntentError(f"no items with study phase {phase!r} in {cfg.annotations}")
    return sets


def cmd_stats(args, cfg: RunConfig) -> int:
    cfg.check_paths(["corpus"])
    tax = _taxonomy(cfg)
    corp = corpus_mod.ingest(cfg.corpus)
    labels = None
    if cfg.annotations is not None:
        outcomes = ann.consensus_outcomes(_study_sets(cfg, tax, args.phase))
        # consensus label (None when no majority) per item
        labels = {i: o.label for i, o in outcomes.items()}
    elif cfg.labels is not None:
        labels = intent.load_labels(cfg.labels, tax).tweet_labels
    table = corpus_mod.corpus_stats(corp, labels, tax)
    _emit(table.to_text())
    out = cfg.output_dir
    write_atomic(out / "stats.tsv", table.to_tsv())
    write_atomic(out / "stats.txt", table.to_text())
    if args.figures and not table.is_empty:
        from .plots import plot_distribution_table

        plot_distribution_table(table, out / "stats.png")
    return 0


def cmd_consensus(args, cfg: RunConfig) -> int:
    cfg.check_paths(["annotations"])
    tax = _taxonomy(cfg)
    outcomes = ann.consensus_outcomes(_study_sets(cfg, tax, args.phase))
    rows = ["item_id\toutcome\tlabel\tnc_un"]
    for item, o in outcomes.items():
        rows.append(f"{item}\t{o.kind.value}\t{o.label.key if o.label else '-'}\t{int(o.is_nc_un)}")
    dist = ann.intention_distribution(outcomes)
    dist_rows = ["bucket\tpercent"] + [f"{k}\t{v:.1f}" for k, v in dist.shares.items()]
    dist_rows.append(f"NC-UN (incl. uncertain)\t{dist.nc_un_percent:.1f}")
    nc = [i for i, o in outcomes.items() if o.is_nc_un]
    out = cfg.output_dir
    write_atomic(out / "consensus.tsv", "\n".join(rows) + "\n")
    write_atomic(out / "distribution.tsv", "\n".join(dist_rows) + "\n")
    write_atomic(out / "nc_un.txt", "".join(f"{i}\n" for i in nc))
    _emit("\n".join(dist_rows) + f"\nNC-UN items: {len(nc)} of {len(outcomes)}")
    if args.figures:
        from .plots import plot_intention_distribution

        plot_intention_distribution(dist, out / "distribution.png")
    return 0


def _fmt_kappa(k) -> str:
    return str(k) if k is ann.UNDEFINED else f"{k:.4f}"


def cmd_agreement(args, cfg: RunConfig) -> int:
    cfg.check_paths(["annotations"])
    tax = _taxonomy(cfg)
    sets = _study_sets(cfg, tax, args.phase)
    outcomes = ann.consensus_outcomes(sets)
    overall = ann.agreement_report(sets)
    hc = [s for s in sets if outcomes[s.item_id].kind is ann.OutcomeKind.HIGH_CONSENSUS]
    lines = [
        "subset\tfleiss_kappa\tband\tn_items\tn_raters\tn_categories",
        f"all\t{_fmt_kappa(overall.fleiss_kappa)}\t{overall.interpretation_band}\t"
        f"{overall.n_items}\t{overall.n_raters}\t{overall.n_categories}",
    ]
    if hc:
        r = ann.agreement_report(hc)
        lines.append(f"high_consensus\t{_fmt_kappa(r.fleiss_kappa)}\t{r.interpretation_band}\t"
                     f"{r.n_items}\t{r.n_raters}\t{r.n_categories}")
    hist = ["outcome\tcount"]
    for kind in ann.OutcomeKind:
        hist.append(f"{kind.value}\t{sum(o.kind is kind for o in outcomes.values())}")
    text = "\n".join(lines) + "\n\n" + "\n".join(hist) + "\n"
    if args.expert:
        experts = {s.item_id: s.votes[0] for s in ann.load_annotations(args.expert, tax) if s.study_phase == "Expert"}
        shared = [i for i in outcomes if i in experts and outcomes[i].kind is ann.OutcomeKind.HIGH_CONSENSUS]
        if shared:
            kappa = ann.cohens_kappa([outcomes[i].label for i in shared], [experts[i] for i in shared])
            text += f"\ncohens_kappa_crowd_vs_expert\t{_fmt_kappa(kappa)}\tn={len(shared)}\n"
    write_atomic(cfg.output_dir / "agreement.tsv", text)
    _emit(text)
    return 0


def cmd_codebook(args, cfg: RunConfig) -> int:
    codes = codebook.load_codes(args.codes)
    kept, _ = codebook.dedupe_exact(codes)
    groupings = codebook.load_groupings(args.groupings)
    merged = codebook.consensus_merge(groupings, args.majority)
    groups = codebook.consensus_grouping(groupings, args.majority)
    text = {c.id: c.text for c in codes}
    lines = [
        f"codes\t{len(codes)}",
        f"after_exact_dedupe\t{len(kept)}",
        f"discarded_by_identity_votes\t{merged.n_discarded}",
        f"groups\t{len(groups)}",
        "",
        "group\tmembers",
    ]
    for g in groups:
        lines.append(f"{g.name}\t{'; '.join(text.get(i, str(i)) for i in sorted(g.members))}")
    out = "\n".join(lines) + "\n"
    write_atomic(cfg.output_dir / "codebook.tsv", out)
    _emit(out)
    return 0


# --- retrieval -------------------------------------------------------------------


def _load_index(args, cfg: RunConfig):
    if getattr(args, "index", None):
        return index_mod.load_index(args.index)
    cfg.check_paths(["corpus"])
    return index_mod.build_index(corpus_mod.ingest(cfg.corpus), include_linked=cfg.include_linked)


def cmd_index(args, cfg: RunConfig) -> int:
    cfg.check_paths(["corpus"])
    idx = index_mod.build_index(corpus_mod.ingest(cfg.corpus), include_linked=cfg.include_linked)
    index_mod.save_index(idx, args.out)
    _emit(f"indexed {idx.n_docs} docs, {len(idx.postings)} terms, avgdl {idx.avg_doc_len:.4f} -> {args.out}")
    return 0


def _baseline(idx, cfg: RunConfig, topics: dict[str, str]) -> dict:
    return {t: index_mod.search(idx, cfg.params, q, cfg.k) for t, q in topics.items()}


def cmd_search(args, cfg: RunConfig) -> int:
    cfg.check_paths(["topics"])
    idx = _load_index(args, cfg)
    run = _baseline(idx, cfg, evaluation.read_topics(cfg.topics))
    write_atomic(args.out, evaluation.format_run(run, "bm25"))
    _emit(f"wrote {sum(map(len, run.values()))} results for {len(run)} topics -> {args.out}")
    return 0


def _label_store(cfg: RunConfig, tax) -> intent.LabelStore:
    paths = [p for p in (cfg.labels, cfg.query_labels) if p is not None]
    return intent.load_label_files(paths, tax)


def _rerank_run(idx, cfg, tax, topics, baseline, store, url_docs):
    opts = rerank_mod.RerankOptions(cfg.stats_scope, cfg.repeat)
    run, unlabeled = {}, {}
    for topic, cands in baseline.items():
        if topic not in topics:
            raise UrlIntentError(f"run topic {topic!r} missing from topics file")
        run[topic] = rerank_mod.rerank(
            idx, cfg.params, topics[topic], store.query_label(topic), cands, store, tax, opts, url_docs
        )
        missing = rerank_mod.unlabeled_candidates(cands, store, url_docs)
        if missing:
            unlabeled[topic] = missing
    return run, unlabeled


def _url_docs(cfg: RunConfig) -> set[str] | None:
    if cfg.corpus is None:
        return None
    return {r.id for r in corpus_mod.ingest(cfg.corpus) if r.urls}


def cmd_rerank(args, cfg: RunConfig) -> int:
    cfg.check_paths(["topics", "corpus"])
    tax = _taxonomy(cfg)
    idx = _load_index(args, cfg)
    store = _label_store(cfg, tax)
    topics = evaluation.read_topics(cfg.topics)
    run, unlabeled = _rerank_run(idx, cfg, tax, topics, evaluation.read_run(args.run), store, _url_docs(cfg))
    write_atomic(args.out, evaluation.format_run(run, "bm25_intent"))
    n_missing = sum(map(len, unlabeled.values()))
    _emit(f"reranked {len(run)} topics -> {args.out}; unlabeled URL candidates passed through: {n_missing}")
    return 0


def _filter_run(cfg, tax, run, store, policy):
    return {
        t: rerank_mod.filter_misaligned(policy, store.query_intent(t), ranked, store, tax, topic_id=t)
        for t, ranked in run.items()
    }


def _policy(cfg: RunConfig):
    return rerank_mod.load_policy(cfg.policy) if cfg.policy else rerank_mod.default_policy()


def cmd_filter(args, cfg: RunConfig) -> int:
    tax = _taxonomy(cfg)
    store = _label_store(cfg, tax)
    run = evaluation.read_run(args.run)
    out = _filter_run(cfg, tax, run, store, _policy(cfg))
    dropped = sum(len(run[t]) - len(out[t]) for t in run)
    write_atomic(args.out, evaluation.format_run(out, args.tag))
    _emit(f"filtered {len(run)} topics -> {args.out}; dropped {dropped}")
    return 0


def _comparison_outputs(comp: evaluation.Comparison, out_dir: Path, figures: bool) -> None:
    write_atomic(out_dir / "comparison.tsv", comp.to_tsv())
    write_atomic(out_dir / "comparison.txt", comp.to_text())
    per_topic = ["run\ttopic\tndcg\tap"]
    for r in comp.rows:
        per_topic += [f"{r.name}\t{t}\t{v[0]:.6f}\t{v[1]:.6f}" for t, v in r.per_topic.items()]
    write_atomic(out_dir / "per_topic.tsv", "\n".join(per_topic) + "\n")
    if figures:
        from .plots import plot_comparison

        plot_comparison(comp, out_dir / "comparison.png")


def _parse_named_run(item: str) -> tuple[str, Path]:
    name, sep, path = item.partition("=")
    if not sep:
        p = Path(item)
        return p.stem, p
    return name, Path(path)


def cmd_eval(args, cfg: RunConfig) -> int:
    cfg.check_paths(["qrels"])
    qrels = evaluation.read_qrels(cfg.qrels)
    runs = {}
    for item in args.run:
        name, path = _parse_named_run(item)
        runs[name] = evaluation.read_run(path)
    comp = evaluation.evaluate_runs(runs, qrels, 10, cfg.gain)
    _comparison_outputs(comp, cfg.output_dir, args.figures)
    _emit(comp.to_text())
    return 0


def run_pipeline(cfg: RunConfig, figures: bool = False) -> evaluation.Comparison:
    """ingest -> index -> search -> rerank -> filter -> eval, outputs under ``cfg.output_dir``."""
    cfg.check_paths(["corpus", "topics", "qrels", "labels", "query_labels"])
    tax = _taxonomy(cfg)
    corp = corpus_mod.ingest(cfg.corpus)
    idx = index_mod.build_index(corp, include_linked=cfg.include_linked)
    topics = evaluation.read_topics(cfg.topics)
    store = _label_store(cfg, tax)
    url_docs = {r.id for r in corp if r.urls}
    out = cfg.output_dir

    baseline = _baseline(idx, cfg, topics)
    intent_run, unlabeled = _rerank_run(idx, cfg, tax, topics, baseline, store, url_docs)
    filtered = _filter_run(cfg, tax, intent_run, store, _policy(cfg))
    write_atomic(out / "bm25.run", evaluation.format_run(baseline, "bm25"))
    write_atomic(out / "bm25_intent.run", evaluation.format_run(intent_run, "bm25_intent"))
    write_atomic(out / "bm25_intent_filter.run", evaluation.format_run(filtered, "bm25_intent_filter"))

    comp = evaluation.evaluate_runs(
        {"BM25": baseline, "BM25 + intent": intent_run, "BM25 + intent + filter": filtered},
        evaluation.read_qrels(cfg.qrels),
        10,
        cfg.gain,
    )
    _comparison_outputs(comp, out, figures)
    report = {
        "corpus_records": len(corp),
        "rejected_records": len(corp.errors),
        "topics": len(topics),
        "k": cfg.k,
        "unlabeled_url_candidates": sum(map(len, unlabeled.values())),
        "unlabeled_by_topic": unlabeled,
        "filtered_out": sum(len(intent_run[t]) - len(filtered[t]) for t in intent_run),
    }
    write_atomic(out / "pipeline_report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    if report["unlabeled_url_candidates"]:
        log.warning("%d URL candidates had no intent label and were not augmented", report["unlabeled_url_candidates"])
    return comp


def cmd_pipeline(args, cfg: RunConfig) -> int:
    comp = run_pipeline(cfg, args.figures)
    _emit(comp.to_text())
    return 0


def demo_config_path() -> Path:
    from importlib import resources

    return Path(str(resources.files("urlintent") / "data" / "demo" / "config.yaml"))


def cmd_demo(args, cfg: RunConfig) -> int:
    demo = RunConfig.load(demo_config_path())
    demo.output_dir = Path(args.output_dir or "demo-out")
    comp = run_pipeline(demo, args.figures)
    _emit(comp.to_text())
    return 0


# --- argument parsing -------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help=f"run config YAML (default: ${CONFIG_ENV})")
    p.add_argument("--taxonomy", help="taxonomy YAML (default: shipped)")
    p.add_argument("--mappings", help="prior-taxonomy mapping TSV (default: shipped)")
    p.add_argument("--output-dir", dest="output_dir")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="urlintent", description="URL-sharing intent taxonomy toolkit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _add_common(p)
        p.set_defaults(func=func)
        return p

    p = add("taxonomy", cmd_taxonomy, "validate, list, resolve labels or map prior taxonomies")
    p.add_argument("action", choices=["validate", "list", "map", "resolve"])
    p.add_argument("file", nargs="?", help="taxonomy file to validate")
    p.add_argument("--source", help="prior taxonomy: Alhadi2011, GomezAdorno2014, Java2007")
    p.add_argument("--label", help="label text to map or resolve")

    p = add("ingest", cmd_ingest, "validate a JSONL corpus")
    p.add_argument("--corpus")
    p.add_argument("--require-urls", action="store_true")
    p.add_argument("--out", help="write the accepted records back out")

    for name, func, help in (
        ("stats", cmd_stats, "tweet-property distributions per intent group"),
        ("consensus", cmd_consensus, "per-item consensus outcomes and intention distribution"),
        ("agreement", cmd_agreement, "Fleiss' kappa and outcome histogram"),
    ):
        p = add(name, func, help)
        flags = ["--annotations", "--study-labels"] + ([] if name == "stats" else ["--labels"])
        p.add_argument(*flags, dest="annotations", help="multi-rater label TSV")
        p.add_argument("--phase", default="Study1")
        if name == "stats":
            p.add_argument("--corpus")
            p.add_argument("--labels", help="gold tweet label TSV (alternative to --annotations)")
        if name == "agreement":
            p.add_argument("--expert", help="label TSV with Expert-phase rows for Cohen's kappa")
        if name != "agreement":
            p.add_argument("--figures", action="store_true", help="also render PNG figures")

    p = add("codebook", cmd_codebook, "dedupe codes and build majority groups")
    p.add_argument("--codes", required=True)
    p.add_argument("--groupings", required=True)
    p.add_argument("--majority", type=int, help="votes needed (default: strict majority)")

    p = add("index", cmd_index, "build and save an index snapshot")
    p.add_argument("--corpus")
    p.add_argument("--include-linked", dest="include_linked", action="store_true", default=None)
    p.add_argument("--out", required=True)

    def retrieval_opts(p):
        p.add_argument("--corpus")
        p.add_argument("--index", help="index snapshot (instead of building from --corpus)")
        p.add_argument("--topics")
        p.add_argument("--k", type=int)
        p.add_argument("--k1", type=float)
        p.add_argument("--b", type=float)
        p.add_argument("--include-linked", dest="include_linked", action="store_true", default=None)

    p = add("search", cmd_search, "BM25 top-k baseline run")
    retrieval_opts(p)
    p.add_argument("--out", required=True)

    p = add("rerank", cmd_rerank, "intent-aware rerank of a baseline run")
    retrieval_opts(p)
    p.add_argument("--labels")
    p.add_argument("--query-labels", dest="query_labels")
    p.add_argument("--run", required=True, help="baseline run file")
    p.add_argument("--stats-scope", dest="stats_scope", choices=rerank_mod.STATS_SCOPES)
    p.add_argument("--repeat", type=int)
    p.add_argument("--out", required=True)

    p = add("filter", cmd_filter, "drop or demote intent-misaligned results")
    p.add_argument("--labels")
    p.add_argument("--query-labels", dest="query_labels")
    p.add_argument("--policy")
    p.add_argument("--run", required=True)
    p.add_argument("--tag", default="filtered")
    p.add_argument("--out", required=True)

    p = add("eval", cmd_eval, "nDCG@10 / MAP comparison of run files")
    p.add_argument("--qrels")
    p.add_argument("--run", action="append", required=True, help="NAME=PATH (repeatable)")
    p.add_argument("--gain", choices=evaluation.GAINS)
    p.add_argument("--figures", action="store_true")

    p = add("pipeline", cmd_pipeline, "run search, rerank, filter and eval from a config")
    retrieval_opts(p)
    p.add_argument("--qrels")
    p.add_argument("--labels")
    p.add_argument("--query-labels", dest="query_labels")
    p.add_argument("--policy")
    p.add_argument("--stats-scope", dest="stats_scope", choices=rerank_mod.STATS_SCOPES)
    p.add_argument("--repeat", type=int)
    p.add_argument("--gain", choices=evaluation.GAINS)
    p.add_argument("--figures", action="store_true")

    p = add("demo", cmd_demo, "run the full pipeline on the shipped synthetic corpus")
    p.add_argument("--figures", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (UrlIntentError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
