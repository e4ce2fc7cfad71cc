from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cluster import Hierarchy, epsilon_dbscan
from .config import RunConfig
from .errors import DegenerateVocabularyError
from .extract.model import ProjectFacts
from .lexicon import build_tfidf, class_documents, load_stoplist
from .similarity import (
    DistanceMatrix,
    SimilarityMatrix,
    class_similarity,
    semantic_similarity,
    structural_similarity,
    to_distance,
)


@dataclass(frozen=True)
class Similarities:
    structural: SimilarityMatrix
    semantic: SimilarityMatrix
    fused: SimilarityMatrix
    distance: DistanceMatrix


def similarities(facts: ProjectFacts, alpha: float, stoplist=None) -> Similarities:
    """Structural and semantic matrices for ``facts`` fused with weight ``alpha`` on the structural side.

    With ``alpha == 1`` the semantic side is unused, so an empty vocabulary is
    tolerated there; otherwise it raises ``DegenerateVocabularyError``.
    """
    structural = structural_similarity(facts.call_graph)
    stoplist = load_stoplist() if stoplist is None else stoplist
    try:
        semantic = semantic_similarity(build_tfidf(class_documents(facts, stoplist)))
    except DegenerateVocabularyError:
        if alpha < 1.0:
            raise
        values = np.eye(facts.n)
        semantic = SimilarityMatrix(values, "semantic")
    fused = class_similarity(structural, semantic, alpha)
    return Similarities(structural, semantic, fused, to_distance(fused))


def decompose(facts: ProjectFacts, config: RunConfig = RunConfig(), stoplist=None) -> Hierarchy:
    if stoplist is None:
        stoplist = load_stoplist(config.stopwords)
    sims = similarities(facts, config.alpha, stoplist)
    return epsilon_dbscan(sims.distance, config.step, config.max_epsilon, config.min_samples)


SWEEPABLE = ("max_epsilon", "alpha", "min_samples")


def sweep_values(param: str, start: float, stop: float, step: float) -> list:
    """Inclusive grid ``start, start + step, ... <= stop`` checked against the parameter's domain."""
    if param not in SWEEPABLE:
        raise ValueError(f"cannot sweep {param!r}; choose from {', '.join(SWEEPABLE)}")
    if not step > 0 or stop < start:
        raise ValueError(f"invalid range {start}..{stop} step {step}")
    count = int(np.floor((stop - start) / step + 1e-9))
    values = [round(start + k * step, 10) for k in range(count + 1)]
    if param == "min_samples":
        if any(v != int(v) or v < 1 for v in values):
            raise ValueError("min_samples values must be integers >= 1")
        return [int(v) for v in values]
    if values[0] < 0.0 or values[-1] > 1.0:
        raise ValueError(f"{param} values must lie in [0, 1]")
    return values


def sweep(facts: ProjectFacts, param: str, values, config: RunConfig = RunConfig(), stoplist=None):
    """Decompose once per value of ``param`` with the rest of ``config`` fixed.

    Yields ``(value, final_layer)`` pairs; the similarity matrices are only
    recomputed when alpha is the swept parameter.
    """
    if stoplist is None:
        stoplist = load_stoplist(config.stopwords)
    sims = None if param == "alpha" else similarities(facts, config.alpha, stoplist)
    for value in values:
        cfg = replace(config, **{param: value})
        if param == "alpha":
            sims = similarities(facts, cfg.alpha, stoplist)
        h = epsilon_dbscan(sims.distance, cfg.step, cfg.max_epsilon, cfg.min_samples)
        yield value, h.final
