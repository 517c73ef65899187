"""End-to-end acceptance checks over the OntoDPM fixture.

Each test appends one PASS/FAIL line to ``conftest.ACCEPTANCE_LINES``; the
lines are printed in the terminal summary.
"""

import random
import time
import xml.etree.ElementTree as ET
from dataclasses import replace

import conftest
from ontobuild import (
    AlignmentMap,
    And,
    Atom,
    Axiom,
    Exists,
    ExactCard,
    ForAll,
    MinCard,
    OntologyDoc,
    Or,
    card,
    check,
    emit,
    normalize,
    parse_ontology,
    reparse,
    srs_report,
    validate_alignment,
)
from ontobuild.model import names_in
from ontobuild.srs import Expectation, compare_expectations

from generators import random_dag_ontology
from oracles import path_count
from xmlcompare import block_mismatches

DISCREPANT = {"Q10": 7, "Q13": 9, "Q14": 16, "Q15": 16, "Q16": 13, "Q20": 6}
CONSISTENT = {
    "Q1": 2, "Q2": 8, "Q3": 10, "Q4": 8, "Q5": 4, "Q6": 2, "Q7": 2, "Q8": 11,
    "Q9": 6, "Q11": 9, "Q12": 3, "Q17": 8, "Q18": 8, "Q19": 14, "Q21": 3,
    "Q22": 2, "Q23": 5,
}


def record(n, ok, detail):
    conftest.ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def errors_of(src):
    doc = parse_ontology(src)
    return [d.code for d in check(doc, normalize(doc, strict=False)).errors()]


def test_criterion_1_corpus_parse(fixture_source):
    start = time.perf_counter()
    doc = parse_ontology(fixture_source, "ontodpm")
    elapsed = time.perf_counter() - start
    ok = len(doc.axioms) == 40 and elapsed < 1.0
    record(1, ok, f"{len(doc.axioms)} axioms parsed, 0 errors, {elapsed * 1000:.1f} ms")


def test_criterion_2_consistency(fixture_doc, fixture_graph, fixture_source):
    clean = check(fixture_doc, fixture_graph)
    cycle = errors_of(fixture_source + "Person sub some isA . ProjectStaff\n")
    conflict = errors_of(fixture_source + "InputIndicator sub some isA . Person\n")
    dags_clean = all(
        check(d, normalize(d)).clean
        for d in (parse_ontology(random_dag_ontology(random.Random(s), roles=True)) for s in range(50))
    )
    ok = clean.error_count == 0 and cycle == ["SubclassCycle"] and conflict == ["CategoryConflict"] and dags_clean
    record(
        2, ok,
        f"fixture {clean.error_count} errors; 2-cycle -> {cycle}; "
        f"class/individual -> {conflict}; 50 random DAGs clean={dags_clean}",
    )


def test_criterion_3_card_ground_truth(fixture_graph, cfg):
    want = {"Government": 4, "Financier": 7, "MonitoringIndicator": 7, "PrivateCompany": 5, "Stakeholder": 9}
    got = {c: card(fixture_graph, cfg, c) for c in want}
    record(3, got == want, ", ".join(f"{c}={v}" for c, v in got.items()))


def test_criterion_4_srs_table(fixture_graph, cfg, questions, expectations):
    start = time.perf_counter()
    report = srs_report(fixture_graph, cfg, questions)
    rows = compare_expectations(report, [Expectation.from_dict(r) for r in expectations])
    elapsed = time.perf_counter() - start
    got = {e.question: e.srs for e in report.entries}
    consistent_ok = all(got[q] == v for q, v in CONSISTENT.items())
    flagged = {r["id"]: r["published_srs"] for r in rows if r["paper_discrepancy"]}
    flags_ok = flagged == DISCREPANT and all(r["match"] for r in rows)
    recomputed = ", ".join(f"{q}={got[q]} (printed {v})" for q, v in DISCREPANT.items())
    record(
        4, consistent_ok and flags_ok and elapsed < 1.0,
        f"17/17 consistent rows match={consistent_ok}; flagged {recomputed}; {elapsed * 1000:.1f} ms",
    )


def test_criterion_5_min_srs(fixture_graph, cfg, questions):
    report = srs_report(fixture_graph, cfg, questions)
    record(5, report.min_srs == 2, f"min SRS over {len(report.entries)} questions = {report.min_srs}")


def test_criterion_6_card_oracle():
    nodes = mismatches = leaf_bad = 0
    for seed in range(200):
        g = normalize(parse_ontology(random_dag_ontology(random.Random(seed), max_nodes=50)))
        for c in g.names:
            nodes += 1
            value = card(g, None, c)
            mismatches += value != path_count(g, c)
            childless = not any(p == c for _, p in g.subclass_edges | g.individual_edges) and not any(
                p == c for p, _, _ in g.composition_edges
            )
            leaf_bad += (value == 1) != childless
    record(
        6, mismatches == 0 and leaf_bad == 0,
        f"200 DAGs, {nodes} nodes, {mismatches} oracle mismatches, {leaf_bad} leaf violations",
    )


def test_criterion_7_owl(fixture_graph):
    doc = emit(fixture_graph)
    ET.fromstring(doc.xml_text)
    golden = [conftest.DATA / f"golden_{n}.xml" for n in ("person", "hasdivision", "indicators")]
    problems = [p for path in golden for p in block_mismatches(path.read_text(), doc.xml_text)]
    deterministic = emit(fixture_graph).xml_text == doc.xml_text
    failures = 0
    for seed in range(100):
        g = normalize(parse_ontology(random_dag_ontology(random.Random(seed), roles=True)))
        back = reparse(emit(g))
        same = (back.classes, back.individuals, back.subclass_edges, back.roles) == (
            g.classes, g.individuals, g.subclass_edges, g.roles,
        )
        failures += not same
    ok = not problems and deterministic and failures == 0
    record(
        7, ok,
        f"well-formed; 3 golden blocks, {len(problems)} mismatches; deterministic={deterministic}; "
        f"round trip failed on {failures}/100 graphs",
    )


def test_criterion_8_alignment(fixture_graph, fixture_dir):
    amap = AlignmentMap.load(fixture_dir / "alignment.json")
    base = validate_alignment(fixture_graph, amap)
    mutated = validate_alignment(
        fixture_graph,
        AlignmentMap(dict(amap.entries, ProjectStaff="Process", Person="Agentive Physical Object")),
    )
    ok = base.valid and not base.incompatibilities and len(mutated.incompatibilities) == 1
    record(
        8, ok,
        f"fixture map {len(base.incompatibilities)} incompatibilities; "
        f"mutated map {len(mutated.incompatibilities)} incompatibility",
    )


# --- rename invariance ---------------------------------------------------


def rename_expr(e, m):
    if isinstance(e, Atom):
        return Atom(m[e.name])
    if isinstance(e, (And, Or)):
        return type(e)(tuple(rename_expr(c, m) for c in e.children))
    if isinstance(e, (Exists, ForAll)):
        return type(e)(e.role, rename_expr(e.filler, m))
    if isinstance(e, (MinCard, ExactCard)):
        return type(e)(e.n, e.role, None if e.filler is None else rename_expr(e.filler, m))
    raise TypeError(e)


def rename_doc(doc, m):
    return OntologyDoc(
        tuple(Axiom(m[a.lhs], rename_expr(a.rhs, m), a.source_line) for a in doc.axioms), doc.name
    )


def concept_names(doc, questions):
    names = {a.lhs for a in doc.axioms}
    for a in doc.axioms:
        names.update(names_in(a.rhs))
    for q in questions:
        names |= set(q.concepts)
    return sorted(names)


def test_criterion_9_rename_invariance(fixture_doc, cfg, questions):
    baseline = [e.srs for e in srs_report(normalize(fixture_doc, cfg), cfg, questions).entries]
    names = concept_names(fixture_doc, questions)
    changed = []
    for seed in range(10):
        rng = random.Random(seed)
        fresh = [f"K{i}x{rng.randrange(10**6)}" for i in range(len(names))]
        rng.shuffle(fresh)
        m = dict(zip(names, fresh))
        assert len(set(m.values())) == len(m)
        doc = rename_doc(fixture_doc, m)
        qs = [replace(q, concepts=tuple(m[c] for c in q.concepts)) for q in questions]
        values = [e.srs for e in srs_report(normalize(doc, cfg), cfg, qs).entries]
        if values != baseline:
            changed.append(seed)
    record(9, not changed, f"10 bijective renamings, {len(changed)} changed any of 23 SRS values")
