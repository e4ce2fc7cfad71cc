"""DBSCAN on a precomputed distance matrix and its epsilon-stepped hierarchical variant."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

# guards the <= epsilon test against float noise from 1 - CS and the epsilon grid
NEIGHBOR_TOL = 1e-12

OUTLIER = -1


@dataclass(frozen=True, eq=False)
class Decomposition:
    """One clustering: ``assignment[i]`` is the cluster of class i, or -1 for an outlier."""

    assignment: np.ndarray
    epsilon: float
    min_samples: int
    core_flags: np.ndarray

    def __post_init__(self):
        for name, dtype in (("assignment", np.int64), ("core_flags", bool)):
            arr = np.array(getattr(self, name), dtype=dtype, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def k(self) -> int:
        return int(self.assignment.max()) + 1 if self.n and self.assignment.max() >= 0 else 0

    @property
    def outlier_count(self) -> int:
        return int((self.assignment == OUTLIER).sum())

    def clusters(self) -> List[np.ndarray]:
        return [np.flatnonzero(self.assignment == c) for c in range(self.k)]

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return (
            np.array_equal(self.assignment, other.assignment)
            and np.array_equal(self.core_flags, other.core_flags)
            and self.epsilon == other.epsilon
            and self.min_samples == other.min_samples
        )


@dataclass(frozen=True)
class Hierarchy:
    layers: Tuple[Decomposition, ...]
    step: float
    max_epsilon: float
    min_samples: int

    @property
    def final(self) -> Decomposition:
        return self.layers[-1]

    @property
    def epsilons(self) -> List[float]:
        return [layer.epsilon for layer in self.layers]


def canonical_labels(labels) -> np.ndarray:
    """Renumber clusters by their lowest member id; -1 stays -1."""
    labels = np.asarray(labels)
    out = np.full(len(labels), OUTLIER, dtype=np.int64)
    mapping = {}
    for i, lab in enumerate(labels):
        if lab == OUTLIER:
            continue
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def _distances(d) -> np.ndarray:
    values = np.asarray(getattr(d, "values", d), dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {values.shape}")
    return values


def _check_min_samples(min_samples) -> int:
    if isinstance(min_samples, bool) or int(min_samples) != min_samples or min_samples < 1:
        raise ValueError(f"min_samples must be an integer >= 1, got {min_samples!r}")
    return int(min_samples)


def dbscan(d, epsilon: float, min_samples: int) -> Decomposition:
    """Density clustering where a class is core when ``min_samples`` classes (itself included)
    lie within ``epsilon``.

    Core classes that are transitively within ``epsilon`` of each other form a
    cluster. A non-core class within ``epsilon`` of some core joins the cluster
    of its lowest-id core neighbour; everything else is an outlier.
    """
    values = _distances(d)
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    min_samples = _check_min_samples(min_samples)
    n = values.shape[0]

    near = values <= epsilon + NEIGHBOR_TOL
    np.fill_diagonal(near, True)
    core = near.sum(axis=1) >= min_samples

    labels = np.full(n, OUTLIER, dtype=np.int64)
    next_label = 0
    for seed in range(n):
        if not core[seed] or labels[seed] != OUTLIER:
            continue
        labels[seed] = next_label
        frontier = [seed]
        while frontier:
            p = frontier.pop()
            for q in np.flatnonzero(near[p] & core):
                if labels[q] == OUTLIER:
                    labels[q] = next_label
                    frontier.append(q)
        next_label += 1

    for p in np.flatnonzero(~core):
        cores = np.flatnonzero(near[p] & core)
        if len(cores):
            labels[p] = labels[cores[0]]

    return Decomposition(canonical_labels(labels), float(epsilon), min_samples, core)


def epsilon_grid(step: float, max_epsilon: float) -> List[float]:
    """0, step, 2*step, ... up to ``max_epsilon``, with a final layer at exactly ``max_epsilon``
    when it is not on the grid."""
    if not step > 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if not 0.0 <= max_epsilon <= 1.0:
        raise ValueError(f"max_epsilon must be in [0, 1], got {max_epsilon}")
    count = int(math.floor(max_epsilon / step + 1e-9))
    grid = [round(k * step, 12) for k in range(count + 1)]
    if abs(grid[-1] - max_epsilon) <= 1e-9:
        grid[-1] = float(max_epsilon)
    elif grid[-1] < max_epsilon:
        grid.append(float(max_epsilon))
    return grid


def epsilon_dbscan(d, step: float, max_epsilon: float, min_samples: int) -> Hierarchy:
    """Run DBSCAN at every epsilon of the grid; the last layer is the recommended decomposition."""
    values = _distances(d)
    min_samples = _check_min_samples(min_samples)
    layers = tuple(dbscan(values, eps, min_samples) for eps in epsilon_grid(step, max_epsilon))
    return Hierarchy(layers, float(step), float(max_epsilon), min_samples)


def hierarchy_edges(h: Hierarchy) -> List[Tuple[int, int, int]]:
    """``(layer, cluster, parent)`` links from each cluster to the next-layer cluster holding its cores."""
    edges = []
    for t in range(len(h.layers) - 1):
        here, above = h.layers[t], h.layers[t + 1]
        for c in range(here.k):
            cores = np.flatnonzero((here.assignment == c) & here.core_flags)
            edges.append((t, c, int(above.assignment[cores[0]])))
    return edges
