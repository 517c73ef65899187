"""DOLCE upper-level taxonomy and validation of domain alignments."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ontobuild.model import ConceptGraph

ROOT = "Entity"

# (category, parent); DOLCE-Lite particulars, named as in the alignment figure
DEFAULT_TAXONOMY = [
    ("Entity", None),
    ("Endurant", "Entity"),
    ("Perdurant", "Entity"),
    ("Quality", "Entity"),
    ("Abstract", "Entity"),
    ("Physical Endurant", "Endurant"),
    ("Non-Physical Endurant", "Endurant"),
    ("Amount Of Matter", "Physical Endurant"),
    ("Feature", "Physical Endurant"),
    ("Physical Object", "Physical Endurant"),
    ("Agentive Physical Object", "Physical Object"),
    ("Non-Agentive Physical Object", "Physical Object"),
    ("Non-Physical Object", "Non-Physical Endurant"),
    ("Mental Object", "Non-Physical Object"),
    ("Social Object", "Non-Physical Object"),
    ("Agentive Social Object", "Social Object"),
    ("Non-Agentive Social Object", "Social Object"),
    ("Social Agent", "Agentive Social Object"),
    ("Society", "Agentive Social Object"),
    ("Event", "Perdurant"),
    ("Stative", "Perdurant"),
    ("Achievement", "Event"),
    ("Accomplishment", "Event"),
    ("State", "Stative"),
    ("Process", "Stative"),
    ("Temporal Quality", "Quality"),
    ("Physical Quality", "Quality"),
    ("Abstract Quality", "Quality"),
    ("Region", "Abstract"),
]


class MalformedTaxonomy(ValueError):
    pass


class UnknownCategory(ValueError):
    def __init__(self, concept: str, category: str):
        self.concept = concept
        self.category = category
        super().__init__(f"{concept} is aligned to unknown DOLCE category {category!r}")


@dataclass(frozen=True)
class DolceTaxonomy:
    categories: frozenset
    parent: dict

    __hash__ = None

    @classmethod
    def from_records(cls, records) -> "DolceTaxonomy":
        parent = {}
        for cat, par in records:
            if cat in parent:
                raise MalformedTaxonomy(f"category {cat!r} listed twice")
            parent[cat] = par
        roots = sorted(c for c, p in parent.items() if p is None)
        if len(roots) != 1:
            raise MalformedTaxonomy(f"expected exactly one root, found {roots}")
        for c, p in parent.items():
            if p is not None and p not in parent:
                raise MalformedTaxonomy(f"{c!r} has unknown parent {p!r}")
        for c in parent:
            seen = {c}
            p = parent[c]
            while p is not None:
                if p in seen:
                    raise MalformedTaxonomy(f"cycle through {p!r}")
                seen.add(p)
                p = parent[p]
        return cls(frozenset(parent), {c: p for c, p in parent.items() if p is not None})

    @property
    def root(self) -> str:
        return next(c for c in self.categories if c not in self.parent)

    def ancestors(self, cat: str) -> list:
        out = []
        while cat in self.parent:
            cat = self.parent[cat]
            out.append(cat)
        return out

    def is_at_or_below(self, cat: str, other: str) -> bool:
        return cat == other or other in self.ancestors(cat)


def load_dolce(source: Union[str, Path, None] = None) -> DolceTaxonomy:
    """Load a taxonomy file of ``{category, parent?}`` records, or the
    embedded default when ``source`` is None."""
    if source is None:
        return DolceTaxonomy.from_records(DEFAULT_TAXONOMY)
    data = json.loads(Path(source).read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise MalformedTaxonomy("taxonomy file must hold a list of records")
    try:
        records = [(r["category"], r.get("parent")) for r in data]
    except (KeyError, TypeError, AttributeError) as err:
        raise MalformedTaxonomy(f"bad taxonomy record: {err}") from err
    return DolceTaxonomy.from_records(records)


def taxonomy_records(tax: DolceTaxonomy) -> list:
    """Records in breadth-first order from the root, for writing a taxonomy file."""
    kids = {}
    for c, p in tax.parent.items():
        kids.setdefault(p, []).append(c)
    out, queue = [], [tax.root]
    while queue:
        c = queue.pop(0)
        rec = {"category": c}
        if c in tax.parent:
            rec["parent"] = tax.parent[c]
        out.append(rec)
        queue.extend(sorted(kids.get(c, ())))
    return out


@dataclass(frozen=True)
class AlignmentMap:
    entries: dict = field(default_factory=dict)

    __hash__ = None

    @classmethod
    def from_records(cls, records) -> "AlignmentMap":
        entries = {}
        for r in records:
            concept, cat = r["concept"], r["dolce"]
            if entries.get(concept, cat) != cat:
                raise ValueError(f"{concept} aligned to both {entries[concept]!r} and {cat!r}")
            entries[concept] = cat
        return cls(entries)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "AlignmentMap":
        return cls.from_records(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class Incompatibility:
    child: str
    parent: str
    dolce_child: str
    dolce_parent: str


@dataclass(frozen=True)
class AlignmentReport:
    coverage: float
    unmapped: tuple
    incompatibilities: tuple
    valid: bool
    not_in_ontology: tuple = ()

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "coverage": self.coverage,
            "unmapped": list(self.unmapped),
            "not_in_ontology": list(self.not_in_ontology),
            "incompatibilities": [
                {
                    "child": i.child,
                    "parent": i.parent,
                    "dolce_child": i.dolce_child,
                    "dolce_parent": i.dolce_parent,
                }
                for i in self.incompatibilities
            ],
        }


def validate_alignment(
    graph: ConceptGraph,
    amap: AlignmentMap,
    tax: Optional[DolceTaxonomy] = None,
) -> AlignmentReport:
    """Check that every subclass edge whose ends are both aligned keeps the
    child at or below the parent's DOLCE category.

    Raises :class:`UnknownCategory` for a target missing from ``tax``;
    incompatibilities are reported, not raised.
    """
    tax = tax or load_dolce()
    for concept in sorted(amap.entries):
        if amap.entries[concept] not in tax.categories:
            raise UnknownCategory(concept, amap.entries[concept])
    mapped = amap.entries
    classes = graph.classes
    unmapped = tuple(sorted(c for c in classes if c not in mapped))
    coverage = (len(classes) - len(unmapped)) / len(classes) if classes else 0.0
    bad = []
    for child, parent in sorted(graph.subclass_edges):
        if child in mapped and parent in mapped:
            dc, dp = mapped[child], mapped[parent]
            if not tax.is_at_or_below(dc, dp):
                bad.append(Incompatibility(child, parent, dc, dp))
    extra = tuple(sorted(c for c in mapped if c not in graph.names))
    return AlignmentReport(coverage, unmapped, tuple(bad), True, extra)
