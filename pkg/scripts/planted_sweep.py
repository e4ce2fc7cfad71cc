"""Sweep max_epsilon over the planted monolith and print metrics per layer.

    python3 scripts/planted_sweep.py [--no-utilities] [--csv out.csv]
"""
import argparse
import tempfile
from pathlib import Path

from msextract.config import RunConfig
from msextract.evaluate import load_truth, match, quality_report
from msextract.export import report_row, rows_to_csv
from msextract.extract import scan_sources
from msextract.pipeline import sweep, sweep_values
from msextract.synthetic import planted_monolith


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--no-utilities", action="store_true", help="only the 3 x 6 service classes")
    ap.add_argument("--services", type=int, default=3)
    ap.add_argument("--step", type=float, default=0.05, help="sweep increment")
    ap.add_argument("--csv", type=Path, default=None)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        pm = planted_monolith(Path(tmp) / "src", n_services=args.services, utilities=not args.no_utilities)
        facts = scan_sources(pm.root)
        truth = load_truth(pm.write_truth(Path(tmp) / "truth.json"), facts.names)

    rows = []
    for eps, final in sweep(facts, "max_epsilon", sweep_values("max_epsilon", 0.0, 1.0, args.step), RunConfig()):
        m = match(final, truth) if final.k else None
        rows.append({"max_epsilon": eps, **report_row(quality_report(final, facts.call_graph), m)})

    print(f"{facts.n} classes, {len(truth.services)} ground-truth services: {', '.join(truth.services)}")
    print(f"{'eps':>5} {'K':>3} {'out':>4} {'SM':>8} {'NED':>5} {'ICP':>7} {'prec':>6}")
    for r in rows:
        cell = lambda v, fmt: format(v, fmt) if isinstance(v, float) else str(v)
        print(
            f"{r['max_epsilon']:>5.2f} {r['k']:>3} {r['outliers']:>4} {cell(r['sm'], '8.4f'):>8} "
            f"{cell(r['ned'], '5.2f'):>5} {cell(r['icp'], '7.4f'):>7} {cell(r.get('precision', 'NA'), '6.3f'):>6}"
        )
    if args.csv:
        args.csv.write_text(rows_to_csv(rows), encoding="utf-8")


if __name__ == "__main__":
    main()
