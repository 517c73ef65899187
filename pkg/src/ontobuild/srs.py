"""Concept weights and competency-question relatedness scores.

A concept's weight is one plus the weights of its children, where children
are subclasses, individuals and composition-role targets; leaves and
individuals weigh 1. A question's score is the sum of the weights of the
concepts it was mapped to; concepts missing from the ontology weigh 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from ontobuild.model import ConceptGraph, NormalizationConfig, child_index

log = logging.getLogger(__name__)


class CycleDetected(ValueError):
    pass


class DuplicateQuestionId(ValueError):
    pass


@dataclass(frozen=True)
class QuestionMapping:
    id: str
    text: str
    concepts: tuple

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))

    @classmethod
    def from_dict(cls, rec: dict) -> "QuestionMapping":
        return cls(rec["id"], rec.get("text", ""), tuple(rec["concepts"]))


@dataclass(frozen=True)
class ConceptScore:
    concept: str
    card: int
    present: bool


@dataclass(frozen=True)
class SrsEntry:
    question: str
    per_concept: tuple
    srs: int

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "srs": self.srs,
            "per_concept": [
                {"concept": s.concept, "card": s.card, "present": s.present}
                for s in self.per_concept
            ],
        }


@dataclass(frozen=True)
class SrsReport:
    entries: tuple = ()
    min_srs: int = 0
    max_srs: int = 0
    unmapped_concepts: frozenset = frozenset()

    def by_id(self) -> dict:
        return {e.question: e for e in self.entries}

    def to_dict(self) -> dict:
        return {
            "min_srs": self.min_srs,
            "max_srs": self.max_srs,
            "unmapped_concepts": sorted(self.unmapped_concepts),
            "entries": [e.to_dict() for e in self.entries],
        }


class CardCounter:
    """Memoized weights over one graph; build one per scoring run."""

    def __init__(self, graph: ConceptGraph, cfg: Optional[NormalizationConfig] = None):
        self.graph = graph
        self.kids = child_index(graph, cfg)
        self.memo = {}

    def __call__(self, c: str) -> int:
        if c not in self.kids:
            return 0
        if c in self.memo:
            return self.memo[c]
        # iterative post-order so deep hierarchies don't hit the recursion limit
        on_path = set()
        stack = [(c, False)]
        while stack:
            node, expanded = stack.pop()
            if node in self.memo:
                continue
            if expanded:
                on_path.discard(node)
                self.memo[node] = 1 + sum(self.memo[k] for k in self.kids[node])
                continue
            if node in on_path:
                raise CycleDetected(f"cycle through {node}")
            on_path.add(node)
            stack.append((node, True))
            for k in self.kids[node]:
                if k in on_path:
                    raise CycleDetected(f"cycle through {k}")
                if k not in self.memo:
                    stack.append((k, False))
        return self.memo[c]


def card(graph: ConceptGraph, cfg: Optional[NormalizationConfig], c: str) -> int:
    return CardCounter(graph, cfg)(c)


def _score(counter: CardCounter, q: QuestionMapping) -> SrsEntry:
    scores = []
    for c in q.concepts:
        k = counter(c)
        if k == 0:
            log.warning("question %s: concept %s is not in the ontology", q.id, c)
        scores.append(ConceptScore(c, k, k > 0))
    return SrsEntry(q.id, tuple(scores), sum(s.card for s in scores))


def srs(graph: ConceptGraph, cfg: Optional[NormalizationConfig], q: QuestionMapping) -> SrsEntry:
    return _score(CardCounter(graph, cfg), q)


def srs_report(
    graph: ConceptGraph,
    cfg: Optional[NormalizationConfig],
    qs: Iterable[QuestionMapping],
) -> SrsReport:
    qs = list(qs)
    seen = set()
    for q in qs:
        if q.id in seen:
            raise DuplicateQuestionId(f"duplicate question id {q.id!r}")
        seen.add(q.id)
    counter = CardCounter(graph, cfg)
    entries = tuple(_score(counter, q) for q in qs)
    values = [e.srs for e in entries]
    unmapped = frozenset(s.concept for e in entries for s in e.per_concept if not s.present)
    return SrsReport(
        entries,
        min(values, default=0),
        max(values, default=0),
        unmapped,
    )


@dataclass(frozen=True)
class Expectation:
    id: str
    expected_srs: int
    paper_discrepancy: bool = False
    published_srs: Optional[int] = None

    @classmethod
    def from_dict(cls, rec: dict) -> "Expectation":
        return cls(
            rec["id"],
            int(rec["expected_srs"]),
            bool(rec.get("paper_discrepancy", False)),
            rec.get("published_srs"),
        )


def compare_expectations(report: SrsReport, expectations: Iterable[Expectation]) -> list:
    """One record per expectation: the computed value next to the expected one,
    with any published value that disagrees carried along."""
    got = report.by_id()
    rows = []
    for exp in expectations:
        entry = got.get(exp.id)
        value = entry.srs if entry is not None else None
        row = {
            "id": exp.id,
            "srs": value,
            "expected_srs": exp.expected_srs,
            "match": value == exp.expected_srs,
            "paper_discrepancy": exp.paper_discrepancy,
        }
        if exp.published_srs is not None:
            row["published_srs"] = exp.published_srs
        rows.append(row)
    return rows
