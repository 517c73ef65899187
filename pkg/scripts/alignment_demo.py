"""Validate the fixture's DOLCE alignment, then a deliberately broken variant."""

from pathlib import Path

from ontobuild import AlignmentMap, normalize, parse_ontology, validate_alignment

FIX = Path(__file__).resolve().parents[1] / "fixtures" / "ontodpm"


def show(title, report):
    print(f"{title}: coverage {report.coverage:.3f}, {len(report.incompatibilities)} incompatibilities")
    for i in report.incompatibilities:
        print(f"  {i.child} [{i.dolce_child}] sub {i.parent} [{i.dolce_parent}]")
    if report.unmapped:
        print("  unmapped:", ", ".join(report.unmapped))


if __name__ == "__main__":
    graph = normalize(parse_ontology((FIX / "ontodpm.dlx").read_text()))
    amap = AlignmentMap.load(FIX / "alignment.json")
    show("fixture", validate_alignment(graph, amap))
    broken = AlignmentMap(dict(amap.entries, ProjectStaff="Process", Person="Agentive Physical Object"))
    show("ProjectStaff -> Process", validate_alignment(graph, broken))
