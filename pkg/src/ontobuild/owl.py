"""Deterministic OWL (RDF/XML) output and a reader for that same output."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from ontobuild.consistency import detect_category_conflicts, detect_subclass_cycles
from ontobuild.dsl import ParseError, parse_axiom, _tokenize_line
from ontobuild.model import ConceptGraph, NormalizationConfig, RoleDecl, pretty_print

DEFAULT_BASE = "http://example.org/ontodpm"

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"

INDENT = "  "


class UncleanGraph(ValueError):
    pass


class UnsupportedElement(ValueError):
    pass


@dataclass(frozen=True)
class OwlDocument:
    xml_text: str
    class_count: int
    property_count: int
    individual_count: int
    base_iri: str = DEFAULT_BASE


def _ref(name: str) -> str:
    return quoteattr("#" + name)


def emit(
    graph: ConceptGraph,
    base_iri: str = DEFAULT_BASE,
    force: bool = False,
) -> OwlDocument:
    """Serialize ``graph``: object properties, then classes, then individuals,
    each section sorted by local name.

    Residual axioms become ``rdfs:comment`` children of their left-hand class.
    Raises :class:`UncleanGraph` on subclass cycles or class/individual
    conflicts unless ``force`` is set.
    """
    if not force:
        problems = detect_subclass_cycles(graph) + detect_category_conflicts(graph)
        if problems:
            raise UncleanGraph("; ".join(d.message for d in problems))

    props = {}  # name -> (domains, ranges)
    for role, decl in graph.roles.items():
        props[role] = (set(decl.domains), set(decl.ranges))
    for parent, child, role in graph.composition_edges:
        doms, rngs = props.setdefault(role, (set(), set()))
        doms.add(parent)
        rngs.add(child)

    parents = defaultdict(set)
    for child, parent in graph.subclass_edges:
        parents[child].add(parent)
    comments = defaultdict(list)
    for ax in graph.residual_axioms:
        comments[ax.lhs].append(pretty_print(ax))
    types = defaultdict(set)
    for ind, cls in graph.individual_edges:
        types[ind].add(cls)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        "<rdf:RDF xmlns=%s" % quoteattr(base_iri + "#"),
        "%sxml:base=%s" % (INDENT * 2, quoteattr(base_iri)),
        "%sxmlns:owl=%s" % (INDENT * 2, quoteattr(OWL)),
        "%sxmlns:rdf=%s" % (INDENT * 2, quoteattr(RDF)),
        "%sxmlns:rdfs=%s>" % (INDENT * 2, quoteattr(RDFS)),
    ]

    def element(tag, name, kids):
        if not kids:
            out.append(f"{INDENT}<{tag} rdf:about={_ref(name)}/>")
            return
        out.append(f"{INDENT}<{tag} rdf:about={_ref(name)}>")
        out.extend(INDENT * 2 + k for k in kids)
        out.append(f"{INDENT}</{tag}>")

    for name in sorted(props):
        doms, rngs = props[name]
        kids = [f"<rdfs:domain rdf:resource={_ref(d)}/>" for d in sorted(doms)]
        kids += [f"<rdfs:range rdf:resource={_ref(r)}/>" for r in sorted(rngs)]
        element("owl:ObjectProperty", name, kids)
    for name in sorted(graph.classes):
        kids = [f"<rdfs:subClassOf rdf:resource={_ref(p)}/>" for p in sorted(parents[name])]
        kids += [f"<rdfs:comment>{escape(c)}</rdfs:comment>" for c in comments[name]]
        element("owl:Class", name, kids)
    for name in sorted(graph.individuals):
        kids = [f"<rdf:type rdf:resource={_ref(c)}/>" for c in sorted(types[name])]
        element("owl:Thing", name, kids)
    out.append("</rdf:RDF>")

    return OwlDocument(
        "\n".join(out) + "\n",
        class_count=len(graph.classes),
        property_count=len(props),
        individual_count=len(graph.individuals),
        base_iri=base_iri,
    )


def _local(iri: Optional[str], base_iri: str) -> str:
    if iri is None:
        raise UnsupportedElement("missing rdf:about/rdf:resource")
    for prefix in (base_iri + "#", "#"):
        if iri.startswith(prefix):
            return iri[len(prefix):]
    raise UnsupportedElement(f"IRI outside the ontology namespace: {iri}")


def reparse(doc: OwlDocument, cfg: Optional[NormalizationConfig] = None) -> ConceptGraph:
    """Rebuild a :class:`ConceptGraph` from :func:`emit` output.

    Properties named in ``cfg.composition_roles`` become composition edges
    (every domain paired with every range); the rest become role declarations.
    """
    cfg = cfg or NormalizationConfig()
    base = doc.base_iri
    about, resource = f"{{{RDF}}}about", f"{{{RDF}}}resource"
    try:
        root = ET.fromstring(doc.xml_text)
    except ET.ParseError as err:
        raise UnsupportedElement(f"not well-formed XML: {err}") from err
    if root.tag != f"{{{RDF}}}RDF":
        raise UnsupportedElement(f"unexpected root element {root.tag}")

    classes, individuals = set(), set()
    sub_edges, ind_edges, comp_edges = set(), set(), set()
    roles, residual = {}, []

    def refs(elem, allowed):
        found = defaultdict(list)
        for kid in elem:
            if kid.tag not in allowed:
                raise UnsupportedElement(f"unexpected <{kid.tag}> inside <{elem.tag}>")
            if kid.tag == f"{{{RDFS}}}comment":
                found[kid.tag].append(kid.text or "")
            else:
                found[kid.tag].append(_local(kid.get(resource), base))
        return found

    for elem in root:
        name = _local(elem.get(about), base)
        if elem.tag == f"{{{OWL}}}ObjectProperty":
            found = refs(elem, {f"{{{RDFS}}}domain", f"{{{RDFS}}}range"})
            doms = frozenset(found[f"{{{RDFS}}}domain"])
            rngs = frozenset(found[f"{{{RDFS}}}range"])
            if name in cfg.composition_roles:
                comp_edges.update((d, r, name) for d in doms for r in rngs)
            else:
                roles[name] = RoleDecl(doms, rngs)
        elif elem.tag == f"{{{OWL}}}Class":
            classes.add(name)
            found = refs(elem, {f"{{{RDFS}}}subClassOf", f"{{{RDFS}}}comment"})
            sub_edges.update((name, p) for p in found[f"{{{RDFS}}}subClassOf"])
            for text in found[f"{{{RDFS}}}comment"]:
                try:
                    residual.append(parse_axiom(_tokenize_line(text, 1)))
                except ParseError as err:
                    raise UnsupportedElement(f"comment on {name} is not an axiom: {err}") from err
        elif elem.tag == f"{{{OWL}}}Thing":
            individuals.add(name)
            found = refs(elem, {f"{{{RDF}}}type"})
            ind_edges.update((name, c) for c in found[f"{{{RDF}}}type"])
        else:
            raise UnsupportedElement(f"unexpected top-level element {elem.tag}")

    return ConceptGraph(
        classes=frozenset(classes),
        individuals=frozenset(individuals),
        subclass_edges=frozenset(sub_edges),
        individual_edges=frozenset(ind_edges),
        composition_edges=frozenset(comp_edges),
        roles={r: roles[r] for r in sorted(roles)},
        residual_axioms=tuple(residual),
    )
