"""Extract and decompose a Java source tree in one go, printing the proposed services.

    python3 scripts/decompose_tree.py path/to/src [--alpha 0.5] [--max-epsilon 0.7] [--min-samples 2]
"""
import argparse
from pathlib import Path

from msextract.config import RunConfig
from msextract.evaluate import quality_report
from msextract.extract import scan_sources
from msextract.pipeline import decompose


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("root", type=Path)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--max-epsilon", type=float, default=0.7)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--min-samples", type=int, default=2)
    args = ap.parse_args()

    facts = scan_sources(args.root)
    for w in facts.warnings:
        print("warning:", w)
    config = RunConfig(alpha=args.alpha, max_epsilon=args.max_epsilon, step=args.step, min_samples=args.min_samples)
    final = decompose(facts, config).final
    for c, members in enumerate(final.clusters()):
        print(f"service {c} ({len(members)} classes)")
        for i in members:
            print("   ", facts.names[i])
    outliers = [facts.names[i] for i in range(facts.n) if final.assignment[i] < 0]
    if outliers:
        print(f"outliers ({len(outliers)}):", ", ".join(outliers))
    q = quality_report(final, facts.call_graph)
    print({k: (round(v, 4) if isinstance(v, float) else v) for k, v in q.as_dict().items()})


if __name__ == "__main__":
    main()
