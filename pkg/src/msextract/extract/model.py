from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from ..errors import FactsValidationError


@dataclass(frozen=True)
class ClassRecord:
    id: int
    qualified_name: str
    source_path: str = ""
    identifiers: Tuple[str, ...] = ()
    comments: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "identifiers", tuple(self.identifiers))
        object.__setattr__(self, "comments", tuple(self.comments))


@dataclass(frozen=True, eq=False)
class CallGraph:
    """Class-level call counts: ``counts[i, j]`` is the number of calls from class i into class j.

    The diagonal holds self-calls. They are kept for inspection but never
    enter ``calls_in`` or any similarity / quality computation.
    """

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise FactsValidationError(f"call counts must be a square matrix, got shape {counts.shape}")
        if (counts < 0).any():
            raise FactsValidationError("call counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    def calls(self, i: int, j: int) -> int:
        return int(self.counts[i, j])

    def inter_class(self) -> np.ndarray:
        """Counts with the self-call diagonal zeroed."""
        out = self.counts.copy()
        np.fill_diagonal(out, 0)
        return out

    def calls_in(self) -> np.ndarray:
        """Incoming calls per class from every other class."""
        return self.inter_class().sum(axis=0)

    def __eq__(self, other):
        if not isinstance(other, CallGraph):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    def __repr__(self):
        return f"CallGraph(n={self.n}, calls={int(self.counts.sum())})"


@dataclass(frozen=True)
class ProjectFacts:
    """Everything the later stages need to know about a monolith.

    ``warnings`` carries non-fatal scan diagnostics (skipped files, merged
    duplicates); it is not part of the facts file and does not take part in
    equality.
    """

    classes: Tuple[ClassRecord, ...]
    call_graph: CallGraph
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        if self.call_graph.n != len(self.classes):
            raise FactsValidationError(
                f"call graph has {self.call_graph.n} classes but the roster has {len(self.classes)}"
            )
        seen = set()
        for i, record in enumerate(self.classes):
            if record.id != i:
                raise FactsValidationError(f"class ids must be contiguous: position {i} has id {record.id}")
            if record.qualified_name in seen:
                raise FactsValidationError(f"duplicate class name {record.qualified_name!r}")
            seen.add(record.qualified_name)

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.qualified_name for c in self.classes)

    def index(self) -> dict:
        return {c.qualified_name: c.id for c in self.classes}


def build_facts(records: Sequence[dict], calls: Sequence[Tuple[str, str, int]], warnings=()) -> ProjectFacts:
    """Assemble facts from name-keyed records, assigning ids by sorted name.

    ``records`` items need ``name`` and may carry ``path``, ``identifiers`` and
    ``comments``. ``calls`` holds ``(caller, callee, count)`` triples; repeated
    pairs are summed.
    """
    ordered = sorted(records, key=lambda r: r["name"])
    classes = [
        ClassRecord(
            id=i,
            qualified_name=r["name"],
            source_path=r.get("path", ""),
            identifiers=r.get("identifiers", ()),
            comments=r.get("comments", ()),
        )
        for i, r in enumerate(ordered)
    ]
    index = {c.qualified_name: c.id for c in classes}
    if len(index) != len(classes):
        names = [c.qualified_name for c in classes]
        dup = sorted({n for n in names if names.count(n) > 1})
        raise FactsValidationError(f"duplicate class name(s): {', '.join(dup)}")
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for src, dst, count in calls:
        for name in (src, dst):
            if name not in index:
                raise FactsValidationError(f"call references unknown class {name!r}")
        if count < 0:
            raise FactsValidationError(f"negative call count {src} -> {dst}: {count}")
        counts[index[src], index[dst]] += count
    return ProjectFacts(classes=classes, call_graph=CallGraph(counts), warnings=tuple(warnings))
