"""ontosub: sentence-pair corpora and ranking evaluation for OWL class
subsumption prediction."""

__version__ = "0.1.0"

from .ontology import (
    ClassRef,
    IngestConfig,
    IngestReport,
    Iri,
    Ontology,
    Restriction,
    SchemaViolation,
    load_ontology,
    parse_ontology_json,
    reconstruct_ontology,
    write_ontology_json,
)
from .ntriples import MalformedTriple, parse_ntriples, parse_ntriples_path
from .hierarchy import ClassHierarchy
from .verbalize import (
    LabelPolicy,
    NoLabel,
    PrepositionTable,
    class_labels,
    verbalize_restriction,
)
from .templates import (
    OntologyContext,
    SentencePair,
    TemplateConfig,
    bc_pairs,
    bc_sequence,
    ic_pairs,
    pc_pairs,
    pc_paths,
    subsumption_pairs,
)
from .sampling import (
    EvalCase,
    EmptyNegativePool,
    LabeledSample,
    SplitSpec,
    SubsumptionAxiom,
    build_eval_cases,
    derive_inter_subsumptions,
    eval_pool_named,
    eval_pool_restriction,
    extract_positives,
    negative_for_training,
    split,
    split_inter,
)
from .scoring import (
    ExternalScorer,
    LexicalScorer,
    ProtocolError,
    ScorerSpec,
    ScorerUnavailable,
    aggregate_candidate,
    lexical_score,
    make_scorer,
    score_batch,
)
from .ranking import Metrics, RankingResult, compute_metrics, evaluate_cases, rank_case
from .corpus import BuildReport, CorpusRecord, CorpusStats, build_corpus, corpus_stats

__all__ = [name for name in dir() if not name.startswith("_")]
