"""relgap: find relation-gaps in an ontology.

A relation-gap is a pair of classes that plausibly should be connected by an
object property but is not.  The package parses an N-Triples subset into an
ontology model, derives class- and instance-level neighbour graphs, computes
three link-prediction features per class pair (common neighbours, Adamic-Adar,
label-embedding cosine), ranks candidate pairs with a linear SVM, and ships
Prophet-style and embedding-cosine baselines plus a precision harness.
"""

from .candidates import (
    NO_RESULTS_MARKER,
    PROPHET_THRESHOLD,
    CandidatePair,
    ProphetScore,
    enumerate_candidates,
    prophet_baseline,
    prophet_score,
    rank_candidates,
    write_baseline_csv,
    write_candidates_csv,
    wv_baseline,
)
from .classifier import (
    MODEL_FORMAT,
    Scaler,
    SvmModel,
    fit_scaler,
    load_model,
    predict,
    read_training_pairs,
    save_model,
    train_svm,
)
from .embeddings import (
    EmbeddingStore,
    LabelVector,
    cosine,
    embed_label,
    load_glove,
    tokenize_label,
)
from .errors import (
    CsvFormatError,
    EvaluationError,
    GloveFormatError,
    InputError,
    ModelFormatError,
    NTriplesParseError,
    RelgapError,
    TrainingError,
    UnembeddableLabelError,
    UnknownNodeError,
)
from .evaluation import (
    JudgmentSet,
    SystemReport,
    compare_report,
    load_judgments,
    precision,
    read_predictions,
    render_precision,
)
from .features import (
    FEATURE_NAMES,
    FeatureVector,
    LabeledPair,
    adamic_adar,
    batch_extract,
    class_vectors,
    common_neighbours,
    extract_features,
    feature_matrix,
    read_feature_csv,
    write_feature_csv,
)
from .graphs import (
    ClassGraph,
    InstanceGraph,
    UndirectedGraph,
    build_class_graph,
    build_instance_graph,
    connected_class_pairs,
    edge_list_text,
    without_edge,
)
from .ontology import (
    Literal,
    Ontology,
    OntologySummary,
    Triple,
    build_ontology,
    load_ontology,
    local_name,
    parse_ntriples,
    resolve_class,
    serialize_ntriples,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "CandidatePair",
    "ClassGraph",
    "CsvFormatError",
    "EmbeddingStore",
    "EvaluationError",
    "FEATURE_NAMES",
    "FeatureVector",
    "GloveFormatError",
    "InputError",
    "InstanceGraph",
    "JudgmentSet",
    "LabelVector",
    "LabeledPair",
    "Literal",
    "MODEL_FORMAT",
    "ModelFormatError",
    "NO_RESULTS_MARKER",
    "NTriplesParseError",
    "Ontology",
    "OntologySummary",
    "PROPHET_THRESHOLD",
    "ProphetScore",
    "RelgapError",
    "Scaler",
    "SvmModel",
    "SystemReport",
    "TrainingError",
    "Triple",
    "UndirectedGraph",
    "UnembeddableLabelError",
    "UnknownNodeError",
    "adamic_adar",
    "batch_extract",
    "build_class_graph",
    "build_instance_graph",
    "build_ontology",
    "class_vectors",
    "common_neighbours",
    "compare_report",
    "connected_class_pairs",
    "cosine",
    "edge_list_text",
    "embed_label",
    "enumerate_candidates",
    "extract_features",
    "feature_matrix",
    "fit_scaler",
    "load_glove",
    "load_judgments",
    "load_model",
    "load_ontology",
    "local_name",
    "parse_ntriples",
    "precision",
    "predict",
    "prophet_baseline",
    "prophet_score",
    "rank_candidates",
    "read_feature_csv",
    "read_predictions",
    "read_training_pairs",
    "render_precision",
    "resolve_class",
    "save_model",
    "serialize_ntriples",
    "summarize",
    "tokenize_label",
    "train_svm",
    "without_edge",
    "write_baseline_csv",
    "write_candidates_csv",
    "write_feature_csv",
    "wv_baseline",
]
