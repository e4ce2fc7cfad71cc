"""Structural, semantic and fused class similarity, and the distance fed to clustering."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .extract.model import CallGraph
from .lexicon import TfIdfMatrix

KINDS = ("structural", "semantic", "fused")


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    values: np.ndarray
    kind: str
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown similarity kind {self.kind!r}")
        values = _frozen(self.values)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"similarity must be square, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    @property
    def n(self) -> int:
        return self.values.shape[0]


def structural_similarity(graph: CallGraph) -> SimilarityMatrix:
    """Mutual call-ratio similarity.

    With ``r[i, j] = calls(i, j) / calls_in(j)``, a pair scores the mean of
    ``r[i, j]`` and ``r[j, i]`` when both classes receive calls, the single
    defined ratio when only one does, and 0 when neither does. Self-calls are
    ignored and the diagonal is 1.
    """
    calls = graph.inter_class().astype(float)
    calls_in = calls.sum(axis=0)
    has_in = calls_in > 0
    ratio = np.divide(calls, calls_in[None, :], out=np.zeros_like(calls), where=has_in[None, :])

    both = has_in[:, None] & has_in[None, :]
    only_j = ~has_in[:, None] & has_in[None, :]
    only_i = has_in[:, None] & ~has_in[None, :]
    sim = np.zeros_like(calls)
    sim[both] = 0.5 * (ratio + ratio.T)[both]
    sim[only_j] = ratio[only_j]
    sim[only_i] = ratio.T[only_i]
    np.fill_diagonal(sim, 1.0)
    return SimilarityMatrix(np.clip(sim, 0.0, 1.0), "structural")


def semantic_similarity(tfidf: TfIdfMatrix) -> SimilarityMatrix:
    """Cosine similarity of TF-IDF rows; an all-zero row scores 0 against every other class."""
    w = np.asarray(tfidf.weights, dtype=float)
    norms = np.linalg.norm(w, axis=1)
    unit = np.divide(w, norms[:, None], out=np.zeros_like(w), where=norms[:, None] > 0)
    sim = unit @ unit.T
    sim = 0.5 * (sim + sim.T)
    np.fill_diagonal(sim, 1.0)
    return SimilarityMatrix(np.clip(sim, 0.0, 1.0), "semantic")


def class_similarity(structural: SimilarityMatrix, semantic: SimilarityMatrix, alpha: float) -> SimilarityMatrix:
    """``alpha * structural + (1 - alpha) * semantic``."""
    if structural.n != semantic.n:
        raise ValueError(f"dimension mismatch: structural is {structural.n}x{structural.n}, semantic is {semantic.n}x{semantic.n}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    fused = alpha * structural.values + (1.0 - alpha) * semantic.values
    np.fill_diagonal(fused, 1.0)
    return SimilarityMatrix(np.clip(fused, 0.0, 1.0), "fused", alpha=alpha)


def to_distance(cs: SimilarityMatrix) -> DistanceMatrix:
    d = 1.0 - cs.values
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(np.clip(d, 0.0, 1.0))


def write_matrix_csv(values: np.ndarray, names: Sequence[str], path) -> None:
    """Matrix as CSV with a header row and a leading name column, rows/columns in class-id order."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["class", *names])
        for name, row in zip(names, np.asarray(values)):
            writer.writerow([name, *(repr(float(v)) for v in row)])
