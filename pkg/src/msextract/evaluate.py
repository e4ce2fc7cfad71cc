"""Decomposition quality (SM, IFN, NED, ICP) and agreement with a ground-truth decomposition.

Outlier classes (label -1) belong to no service and are left out of every
metric. Self-calls are ignored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cluster import OUTLIER, canonical_labels
from .errors import ClassUniverseError, UndefinedMetricError
from .extract.model import CallGraph

SR_LEVELS = tuple(range(1, 11))


def _labels(decomp) -> np.ndarray:
    return np.asarray(getattr(decomp, "assignment", decomp), dtype=np.int64)


def _clusters(decomp) -> List[np.ndarray]:
    labels = canonical_labels(_labels(decomp))
    k = int(labels.max()) + 1 if len(labels) and labels.max() >= 0 else 0
    if k == 0:
        raise UndefinedMetricError("decomposition has no clusters (every class is an outlier)")
    return [np.flatnonzero(labels == c) for c in range(k)]


def _edges(graph: CallGraph) -> np.ndarray:
    return graph.inter_class() > 0


@dataclass(frozen=True)
class GroundTruth:
    assignment: np.ndarray
    services: Tuple[str, ...] = ()

    def __post_init__(self):
        arr = np.array(self.assignment, dtype=np.int64, copy=True)
        if (arr < 0).any():
            raise ValueError("ground truth cannot contain outliers")
        arr.setflags(write=False)
        object.__setattr__(self, "assignment", arr)

    def clusters(self) -> List[np.ndarray]:
        return [np.flatnonzero(self.assignment == c) for c in range(int(self.assignment.max()) + 1)]


def load_truth(path, class_names: Sequence[str]) -> GroundTruth:
    """Read ``{"services": {name: [qualified class name, ...]}}`` against a class roster.

    Service ids follow the sorted service names. Every roster class must be
    listed exactly once and no unknown name may appear.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    services = data.get("services") if isinstance(data, dict) else None
    if not isinstance(services, dict):
        raise ClassUniverseError(f"{path}: expected an object with a 'services' mapping")
    index = {name: i for i, name in enumerate(class_names)}
    assignment = np.full(len(class_names), OUTLIER, dtype=np.int64)
    unknown, repeated = [], []
    names = sorted(services)
    for sid, service in enumerate(names):
        for cls in services[service]:
            if cls not in index:
                unknown.append(cls)
            elif assignment[index[cls]] != OUTLIER:
                repeated.append(cls)
            else:
                assignment[index[cls]] = sid
    missing = [class_names[i] for i in np.flatnonzero(assignment == OUTLIER)]
    if unknown or missing or repeated:
        parts = []
        if missing:
            parts.append("missing from truth: " + ", ".join(missing))
        if unknown:
            parts.append("not in facts: " + ", ".join(sorted(unknown)))
        if repeated:
            parts.append("listed twice: " + ", ".join(sorted(repeated)))
        raise ClassUniverseError("; ".join(parts), missing=missing, unknown=sorted(unknown))
    return GroundTruth(assignment, tuple(names))


# -- intrinsic quality ---------------------------------------------------------------


def structural_modularity(decomp, graph: CallGraph) -> float:
    """Mean cohesion ``mu_i / m_i^2`` minus mean pairwise coupling ``sigma_ij / (2 m_i m_j)``.

    ``mu_i`` counts distinct directed call edges inside cluster i and
    ``sigma_ij`` distinct directed edges between clusters i and j in either
    direction. The coupling term is averaged over the K(K-1)/2 unordered pairs
    and is 0 for a single cluster.
    """
    clusters = _clusters(decomp)
    edges = _edges(graph)
    k = len(clusters)
    cohesion = sum(edges[np.ix_(c, c)].sum() / len(c) ** 2 for c in clusters) / k
    if k == 1:
        return float(cohesion)
    coupling = 0.0
    for a in range(k):
        for b in range(a + 1, k):
            ca, cb = clusters[a], clusters[b]
            sigma = edges[np.ix_(ca, cb)].sum() + edges[np.ix_(cb, ca)].sum()
            coupling += sigma / (2.0 * len(ca) * len(cb))
    return float(cohesion - coupling / (k * (k - 1) / 2.0))


def interface_number(decomp, graph: CallGraph) -> float:
    """Mean number of classes per cluster that are called from another cluster."""
    clusters = _clusters(decomp)
    labels = canonical_labels(_labels(decomp))
    edges = _edges(graph)
    total = 0
    for cid, members in enumerate(clusters):
        callers = np.flatnonzero((labels != OUTLIER) & (labels != cid))
        if len(callers):
            total += int(edges[np.ix_(callers, members)].any(axis=0).sum())
    return total / len(clusters)


def non_extreme_distribution(decomp) -> float:
    """1 minus the share of clusters with strictly between 5 and 20 classes."""
    clusters = _clusters(decomp)
    moderate = sum(1 for c in clusters if 5 < len(c) < 20)
    return 1.0 - moderate / len(clusters)


def inter_call_percentage(decomp, graph: CallGraph) -> float:
    """Share of log-damped call weight that crosses cluster boundaries.

    Each calling pair contributes ``ln(calls) + 1``; pairs without calls
    contribute nothing.
    """
    clusters = _clusters(decomp)
    labels = canonical_labels(_labels(decomp))
    calls = graph.inter_class().astype(float)
    weight = np.zeros_like(calls)
    called = calls > 0
    weight[called] = np.log(calls[called]) + 1.0
    inside = labels != OUTLIER
    both = inside[:, None] & inside[None, :]
    same = labels[:, None] == labels[None, :]
    total = weight[both].sum()
    if total == 0:
        raise UndefinedMetricError("no calls between clustered classes; ICP is undefined")
    return float(weight[both & ~same].sum() / total)


@dataclass(frozen=True)
class QualityReport:
    """Intrinsic metrics of one decomposition; ``None`` marks an undefined metric."""

    sm: Optional[float]
    ifn: Optional[float]
    ned: Optional[float]
    icp: Optional[float]
    k: int
    outlier_count: int

    def as_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "outliers": self.outlier_count,
            "sm": self.sm,
            "ifn": self.ifn,
            "ned": self.ned,
            "icp": self.icp,
        }


def _defined(fn, *args) -> Optional[float]:
    try:
        return fn(*args)
    except UndefinedMetricError:
        return None


def quality_report(decomp, graph: CallGraph) -> QualityReport:
    labels = canonical_labels(_labels(decomp))
    k = int(labels.max()) + 1 if len(labels) and labels.max() >= 0 else 0
    return QualityReport(
        sm=_defined(structural_modularity, labels, graph),
        ifn=_defined(interface_number, labels, graph),
        ned=_defined(non_extreme_distribution, labels),
        icp=_defined(inter_call_percentage, labels, graph),
        k=k,
        outlier_count=int((labels == OUTLIER).sum()),
    )


# -- ground-truth matching ---------------------------------------------------------------


def _truth_labels(truth) -> np.ndarray:
    return np.asarray(getattr(truth, "assignment", truth), dtype=np.int64)


def overlap(cluster: Sequence[int], truth, truth_cluster: int) -> float:
    members = np.asarray(sorted(set(int(c) for c in cluster)))
    return float((_truth_labels(truth)[members] == truth_cluster).sum() / len(members))


def correspond(cluster: Sequence[int], truth) -> int:
    """Truth cluster sharing the most classes with ``cluster``; ties go to the lowest id."""
    members = sorted(set(int(c) for c in cluster))
    if not members:
        raise ValueError("cluster must be non-empty")
    hits = _truth_labels(truth)[members]
    counts = np.bincount(hits)
    return int(np.argmax(counts))


@dataclass(frozen=True)
class MatchReport:
    precision: float
    sr: Dict[int, float]
    per_cluster: List[Tuple[int, int, float]] = field(default_factory=list)

    def sr_at(self, k: int) -> float:
        return self.sr[k]


def match(decomp, truth) -> MatchReport:
    clusters = _clusters(decomp)
    per_cluster = []
    for cid, members in enumerate(clusters):
        target = correspond(members, truth)
        per_cluster.append((cid, target, overlap(members, truth, target)))
    fractions = np.array([p[2] for p in per_cluster])
    sr = {k: float(np.mean(fractions >= k / 10)) for k in SR_LEVELS}
    return MatchReport(float(fractions.mean()), sr, per_cluster)


def precision(decomp, truth) -> float:
    """Mean, over extracted clusters, of the fraction of classes found in the corresponding truth cluster."""
    return match(decomp, truth).precision


def success_rate(decomp, truth, k: int) -> float:
    """Share of extracted clusters whose overlap with their truth counterpart is at least ``k / 10``."""
    if k not in SR_LEVELS:
        raise ValueError(f"k must be an integer in 1..10, got {k!r}")
    return match(decomp, truth).sr[k]

