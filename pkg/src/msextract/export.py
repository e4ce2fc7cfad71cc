"""JSON / CSV / DOT writers and readers for hierarchies, decompositions and reports.

Undefined metrics are written as the string ``"NA"``, never as 0.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .cluster import OUTLIER, Decomposition, Hierarchy, hierarchy_edges
from .errors import ClassUniverseError, FactsValidationError

NA = "NA"


def _na(value):
    return NA if value is None else value


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def decomposition_to_dict(decomp: Decomposition, names: Sequence[str]) -> dict:
    return {
        "classes": list(names),
        "epsilon": decomp.epsilon,
        "min_samples": decomp.min_samples,
        "k": decomp.k,
        "outliers": decomp.outlier_count,
        "assignment": [int(x) for x in decomp.assignment],
        "core": [bool(x) for x in decomp.core_flags],
    }


def hierarchy_to_dict(h: Hierarchy, names: Sequence[str]) -> dict:
    return {
        "classes": list(names),
        "step": h.step,
        "max_epsilon": h.max_epsilon,
        "min_samples": h.min_samples,
        "layers": [
            {
                "epsilon": layer.epsilon,
                "k": layer.k,
                "outliers": layer.outlier_count,
                "assignment": [int(x) for x in layer.assignment],
                "core": [bool(x) for x in layer.core_flags],
            }
            for layer in h.layers
        ],
        "edges": [{"layer": t, "cluster": c, "parent": p} for t, c, p in hierarchy_edges(h)],
    }


def services_view(decomp: Decomposition, names: Sequence[str]) -> dict:
    """Final decomposition in the same shape as a ground-truth file, plus the outlier list."""
    services = {f"service_{c}": [names[i] for i in members] for c, members in enumerate(decomp.clusters())}
    return {
        "services": services,
        "outliers": [names[i] for i in np.flatnonzero(decomp.assignment == OUTLIER)],
    }


def hierarchy_to_dot(h: Hierarchy, names: Sequence[str]) -> str:
    """One node per cluster per layer, edges to the parent cluster one layer up.

    Each layer's outliers are collapsed into one dashed grey node that takes
    no part in the edges.
    """
    out = io.StringIO()
    out.write("digraph hierarchy {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n")
    for t, layer in enumerate(h.layers):
        out.write(f'  subgraph layer_{t} {{\n    rank=same;\n    label="eps={layer.epsilon:g}";\n')
        for c, members in enumerate(layer.clusters()):
            label = f"L{t} C{c}\\neps={layer.epsilon:g}\\n{len(members)} classes"
            if t == len(h.layers) - 1:
                label += "\\n" + "\\n".join(names[i].rsplit(".", 1)[-1] for i in members)
            out.write(f'    "L{t}_C{c}" [label="{label}"];\n')
        if layer.outlier_count:
            out.write(
                f'    "L{t}_outliers" [label="L{t} outliers\\n{layer.outlier_count} classes", '
                'style=dashed, color=grey, fontcolor=grey];\n'
            )
        out.write("  }\n")
    for t, c, p in hierarchy_edges(h):
        out.write(f'  "L{t}_C{c}" -> "L{t + 1}_C{p}";\n')
    out.write("}\n")
    return out.getvalue()


def hierarchy_from_dict(data: dict) -> Hierarchy:
    try:
        layers = tuple(
            Decomposition(
                np.asarray(layer["assignment"], dtype=np.int64),
                float(layer["epsilon"]),
                int(data["min_samples"]),
                np.asarray(layer["core"], dtype=bool),
            )
            for layer in data["layers"]
        )
        return Hierarchy(layers, float(data["step"]), float(data["max_epsilon"]), int(data["min_samples"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FactsValidationError(f"malformed hierarchy file: {exc}") from None


def load_assignment(path, names: Sequence[str], layer: Optional[int] = None) -> np.ndarray:
    """Read an assignment vector aligned to ``names`` from any supported decomposition file.

    Accepts a hierarchy file (final layer unless ``layer`` is given), a single
    decomposition file, or a services mapping where unlisted classes are
    outliers.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise FactsValidationError(f"malformed decomposition file {path}: expected a JSON object")
    if "services" in data:
        index = {n: i for i, n in enumerate(names)}
        assignment = np.full(len(names), OUTLIER, dtype=np.int64)
        unknown = []
        for sid, service in enumerate(sorted(data["services"])):
            for cls in data["services"][service]:
                if cls in index:
                    assignment[index[cls]] = sid
                else:
                    unknown.append(cls)
        if unknown:
            raise ClassUniverseError("decomposition names classes not in facts: " + ", ".join(sorted(unknown)), unknown=unknown)
        return assignment

    file_names = data.get("classes")
    if file_names is not None and not (isinstance(file_names, list) and all(isinstance(n, str) for n in file_names)):
        raise FactsValidationError(f"malformed decomposition file {path}: 'classes' must be a list of names")
    if file_names is not None and list(file_names) != list(names):
        missing = sorted(set(names) - set(file_names))
        unknown = sorted(set(file_names) - set(names))
        raise ClassUniverseError(
            "decomposition and facts disagree on classes"
            + (f"; missing: {', '.join(missing)}" if missing else "")
            + (f"; unknown: {', '.join(unknown)}" if unknown else ""),
            missing=missing,
            unknown=unknown,
        )
    try:
        if "layers" in data:
            layers = data["layers"]
            chosen = layers[-1] if layer is None else layers[layer]
            assignment = chosen["assignment"]
        else:
            assignment = data["assignment"]
    except IndexError:
        raise ValueError(f"layer {layer} out of range for a hierarchy of {len(data['layers'])} layers") from None
    except (KeyError, TypeError) as exc:
        raise FactsValidationError(f"malformed decomposition file {path}: missing {exc}") from None
    if len(assignment) != len(names):
        raise ClassUniverseError(f"assignment has {len(assignment)} entries but facts have {len(names)} classes")
    return np.asarray(assignment, dtype=np.int64)


def report_row(quality, match=None, sr_levels: Iterable[int] = (5, 7, 9)) -> Dict[str, object]:
    row = {key: _na(value) for key, value in quality.as_dict().items()}
    if match is not None:
        row["precision"] = match.precision
        for k in sr_levels:
            row[f"sr@{k}"] = match.sr[k]
    return row


def rows_to_csv(rows: List[Dict[str, object]]) -> str:
    if not rows:
        return ""
    out = io.StringIO()
    fields = list(rows[0])
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return out.getvalue()
