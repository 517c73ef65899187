import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ontobuild import (
    AlignmentMap,
    MalformedTaxonomy,
    UnknownCategory,
    load_dolce,
    normalize,
    parse_ontology,
    validate_alignment,
)
from ontobuild.dolce import DolceTaxonomy, taxonomy_records

from oracles import dolce_is_under

MAPPED_TARGETS = {
    "Abstract Quality",
    "Agentive Physical Object",
    "Non-Agentive Social Object",
    "Process",
    "Social Agent",
    "Society",
    "Temporal Quality",
}


@pytest.fixture(scope="module")
def tax():
    return load_dolce()


@pytest.fixture(scope="module")
def amap(fixture_dir):
    return AlignmentMap.load(fixture_dir / "alignment.json")


def test_default_taxonomy(tax):
    assert tax.root == "Entity"
    assert len(tax.categories) >= 18
    assert MAPPED_TARGETS <= tax.categories


def test_fixture_targets_exist(tax, amap):
    assert set(amap.entries.values()) == MAPPED_TARGETS


def test_file_copy_matches_default(tax, fixture_dir):
    assert load_dolce(fixture_dir / "dolce.json") == tax


def test_records_round_trip(tax, tmp_path):
    path = tmp_path / "t.json"
    records = taxonomy_records(tax)
    assert records[0] == {"category": "Entity"}
    path.write_text(json.dumps(records))
    assert load_dolce(path) == tax


@pytest.mark.parametrize(
    "records",
    [
        [("A", None), ("B", None)],
        [("A", None), ("B", "C"), ("C", "B")],
        [("A", None), ("B", "Z")],
        [("A", None), ("A", None)],
        [],
    ],
)
def test_malformed(records):
    with pytest.raises(MalformedTaxonomy):
        DolceTaxonomy.from_records(records)


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"category": "Entity"}')
    with pytest.raises(MalformedTaxonomy):
        load_dolce(path)
    path.write_text('[{"parent": "Entity"}]')
    with pytest.raises(MalformedTaxonomy):
        load_dolce(path)


def test_ancestry_matches_oracle(tax):
    for a in tax.categories:
        for b in tax.categories:
            assert tax.is_at_or_below(a, b) == dolce_is_under(tax.parent, a, b)


def test_fixture_alignment_is_valid(fixture_graph, amap, tax):
    report = validate_alignment(fixture_graph, amap, tax)
    assert report.valid and report.incompatibilities == ()
    assert report.unmapped == ("DevelopmentProject", "Financier", "Programme", "Stakeholder")
    assert report.coverage == pytest.approx(25 / 29)
    assert "Community" in report.not_in_ontology


def test_constructed_incompatibility(fixture_graph, amap, tax):
    entries = dict(amap.entries, ProjectStaff="Process", Person="Agentive Physical Object")
    report = validate_alignment(fixture_graph, AlignmentMap(entries), tax)
    assert len(report.incompatibilities) == 1
    bad = report.incompatibilities[0]
    assert (bad.child, bad.parent) == ("ProjectStaff", "Person")
    assert (bad.dolce_child, bad.dolce_parent) == ("Process", "Agentive Physical Object")


def test_empty_map(fixture_graph, tax):
    report = validate_alignment(fixture_graph, AlignmentMap(), tax)
    assert report.coverage == 0
    assert set(report.unmapped) == fixture_graph.classes


def test_unknown_category(fixture_graph, amap):
    with pytest.raises(UnknownCategory) as err:
        validate_alignment(fixture_graph, AlignmentMap(dict(amap.entries, Person="Agentive Physcial Object")))
    assert err.value.concept == "Person"


def test_conflicting_records():
    with pytest.raises(ValueError):
        AlignmentMap.from_records([{"concept": "A", "dolce": "Process"}, {"concept": "A", "dolce": "Society"}])


@given(st.data())
def test_coverage_full_iff_nothing_unmapped(data):
    tax = load_dolce()
    g = normalize(parse_ontology("A sub B\nC sub B\nB sub D\n"))
    cats = sorted(tax.categories)
    chosen = data.draw(st.sets(st.sampled_from(sorted(g.classes))))
    amap = AlignmentMap({c: data.draw(st.sampled_from(cats)) for c in chosen})
    report = validate_alignment(g, amap, tax)
    assert (report.coverage == 1.0) == (report.unmapped == ())
    assert 0.0 <= report.coverage <= 1.0
    for inc in report.incompatibilities:
        assert not dolce_is_under(tax.parent, inc.dolce_child, inc.dolce_parent)
