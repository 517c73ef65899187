"""Element-level comparison of golden OWL blocks against emitted output."""

import xml.etree.ElementTree as ET

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_COMMENT = "{http://www.w3.org/2000/01/rdf-schema#}comment"
ABOUT = f"{{{RDF}}}about"


def _shape(elem):
    kids = [(k.tag, sorted(k.attrib.items())) for k in elem if k.tag != RDFS_COMMENT]
    return elem.tag, sorted(elem.attrib.items()), kids


def block_mismatches(golden_xml: str, emitted_xml: str) -> list:
    """Every top-level element of ``golden_xml`` must appear in ``emitted_xml``
    with the same tag, attributes and child elements (annotation comments on
    the emitted side are ignored). Returns a list of problems."""
    emitted = {
        (e.tag, e.get(ABOUT)): e for e in ET.fromstring(emitted_xml)
    }
    problems = []
    for g in ET.fromstring(golden_xml):
        e = emitted.get((g.tag, g.get(ABOUT)))
        if e is None:
            problems.append(f"missing {g.tag} {g.get(ABOUT)}")
        elif _shape(e) != _shape(g):
            problems.append(f"{g.get(ABOUT)}: {_shape(e)} != {_shape(g)}")
    return problems
