"""Candidate microservices from a monolith: class similarity from calls and vocabulary,
clustered with an epsilon-stepped DBSCAN."""

from .cluster import Decomposition, Hierarchy, dbscan, epsilon_dbscan, hierarchy_edges
from .config import RunConfig
from .evaluate import (
    GroundTruth,
    QualityReport,
    correspond,
    inter_call_percentage,
    interface_number,
    non_extreme_distribution,
    precision,
    quality_report,
    structural_modularity,
    success_rate,
)
from .extract import CallGraph, ClassRecord, ProjectFacts, load_facts, save_facts, scan_sources
from .lexicon import build_tfidf, preprocess
from .pipeline import decompose, similarities
from .similarity import class_similarity, semantic_similarity, structural_similarity, to_distance

__version__ = "0.1.0"
