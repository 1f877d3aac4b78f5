"""URL-sharing intent taxonomy: annotation analytics and intent-aware microblog retrieval."""

from .annotations import (
    UNDEFINED,
    AnnotationSet,
    ConsensusOutcome,
    OutcomeKind,
    agreement_delta,
    classify_consensus,
    cohens_kappa,
    fleiss_kappa,
    intention_distribution,
)
from .corpus import Corpus, LinkedDoc, TweetRecord, bucket_length, bucket_reactions, corpus_stats, ingest
from .evaluation import average_precision, evaluate_runs, ndcg_at_k
from .index import Bm25Params, InvertedIndex, Tokenizer, bm25_score, build_index, search, tokenize
from .intent import LabelStore, QueryIntent, classify_heuristic, load_labels
from .rerank import AlignmentPolicy, RerankOptions, augment_query, filter_misaligned
from .taxonomy import (
    UNCERTAIN_LABEL,
    IntentLabel,
    Taxonomy,
    default_taxonomy,
    load_taxonomy,
    map_prior,
    resolve_label,
)

__version__ = "0.1.0"
