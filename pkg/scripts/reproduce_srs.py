"""Recompute the competency-question scores for the bundled fixture and
compare them with the published values.

    python3 scripts/reproduce_srs.py [--fixtures DIR]
"""

import argparse
import json
from pathlib import Path

from ontobuild import NormalizationConfig, QuestionMapping, normalize, parse_ontology, srs_report
from ontobuild.srs import Expectation, compare_expectations

DEFAULT = Path(__file__).resolve().parents[1] / "fixtures" / "ontodpm"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", type=Path, default=DEFAULT)
    args = ap.parse_args()

    cfg = NormalizationConfig()
    graph = normalize(parse_ontology((args.fixtures / "ontodpm.dlx").read_text()), cfg)
    questions = [QuestionMapping.from_dict(r) for r in json.loads((args.fixtures / "questions.json").read_text())]
    report = srs_report(graph, cfg, questions)
    exps = [Expectation.from_dict(r) for r in json.loads((args.fixtures / "expected_srs.json").read_text())]
    rows = {r["id"]: r for r in compare_expectations(report, exps)}

    print(f"{'id':<4} {'srs':>4} {'published':>9}  concepts")
    for e in report.entries:
        row = rows[e.question]
        published = row.get("published_srs", e.srs)
        mark = " *" if row["paper_discrepancy"] else ""
        breakdown = " + ".join(f"{s.concept}={s.card}" for s in e.per_concept)
        print(f"{e.question:<4} {e.srs:>4} {published:>9}{mark:2} {breakdown}")
    print(f"\nmin {report.min_srs}, max {report.max_srs}; * = published value differs from the recomputed sum")


if __name__ == "__main__":
    main()
