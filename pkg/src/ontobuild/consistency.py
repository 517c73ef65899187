"""Structural consistency checks over a normalized ontology."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import List, Optional

from ontobuild.model import (
    Atom,
    And,
    ConceptGraph,
    Exists,
    NormalizationConfig,
    OntologyDoc,
    _filler_names,
    names_in,
    reserved_role_misuses,
)

ERROR = "Error"
WARNING = "Warning"

CODES = (
    "SubclassCycle",
    "CategoryConflict",
    "ReservedRoleMisuse",
    "DuplicateAxiom",
    "IsolatedName",
    "RangeIsIndividual",
)

_SEVERITY_RANK = {ERROR: 0, WARNING: 1}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    subjects: tuple
    message: str
    source_lines: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "subjects", tuple(self.subjects))
        object.__setattr__(self, "source_lines", tuple(self.source_lines))
        if not self.subjects:
            raise ValueError("a diagnostic needs at least one subject")
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def sort_key(self):
        return (_SEVERITY_RANK[self.severity], self.code, self.subjects[0], self.subjects, self.message)

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "subjects": list(self.subjects),
            "message": self.message,
            "source_lines": list(self.source_lines),
        }


@dataclass(frozen=True)
class DiagnosticReport:
    diagnostics: tuple = ()
    error_count: int = 0
    warning_count: int = 0
    clean: bool = True

    @classmethod
    def from_diagnostics(cls, diags) -> "DiagnosticReport":
        diags = tuple(sorted(diags, key=Diagnostic.sort_key))
        errors = sum(d.severity == ERROR for d in diags)
        return cls(diags, errors, len(diags) - errors, errors == 0)

    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == ERROR]

    def to_dict(self) -> dict:
        return {
            "clean": self.clean,
            "error_count": self.error_count,
            "warning_count": self.warning_count,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


def _lines_mentioning(doc: Optional[OntologyDoc], names) -> tuple:
    if doc is None:
        return ()
    names = set(names)
    return tuple(
        ax.source_line
        for ax in doc.axioms
        if ax.lhs in names or names.intersection(names_in(ax.rhs))
    )


def strongly_connected_components(nodes, edges) -> list:
    """Tarjan's algorithm, iterative. ``edges`` are ``(src, dst)`` pairs."""
    succ = defaultdict(list)
    for a, b in edges:
        succ[a].append(b)
    for a in succ:
        succ[a].sort()
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = 0
    for root in sorted(set(nodes) | set(succ)):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def detect_subclass_cycles(graph: ConceptGraph, doc: Optional[OntologyDoc] = None) -> list:
    self_loops = {a for a, b in graph.subclass_edges if a == b}
    out = []
    for comp in strongly_connected_components(graph.names, graph.subclass_edges):
        if len(comp) < 2 and comp[0] not in self_loops:
            continue
        out.append(
            Diagnostic(
                ERROR,
                "SubclassCycle",
                comp,
                "subclass cycle through " + " -> ".join(comp + [comp[0]]),
                _lines_mentioning(doc, comp),
            )
        )
    return out


def detect_category_conflicts(graph: ConceptGraph, doc: Optional[OntologyDoc] = None) -> list:
    class_like = {n for edge in graph.subclass_edges for n in edge}
    if doc is not None:
        class_like.update(ax.lhs for ax in doc.axioms)
    out = []
    for name in sorted(graph.individuals & class_like):
        out.append(
            Diagnostic(
                ERROR,
                "CategoryConflict",
                [name],
                f"{name} is used both as an individual and as a class",
                _lines_mentioning(doc, [name]),
            )
        )
    for role in sorted(graph.roles):
        bad = sorted(graph.roles[role].ranges & graph.individuals)
        for name in bad:
            out.append(
                Diagnostic(
                    ERROR,
                    "RangeIsIndividual",
                    [name, role],
                    f"range of role {role} is the individual {name}",
                    _lines_mentioning(doc, [name]),
                )
            )
    return out


def detect_reserved_role_misuse(doc: OntologyDoc, cfg: NormalizationConfig) -> list:
    out = []
    for ax in doc.axioms:
        for role, reason in reserved_role_misuses(ax, cfg):
            out.append(
                Diagnostic(
                    ERROR,
                    "ReservedRoleMisuse",
                    [ax.lhs, role],
                    f"reserved role {role} {reason}",
                    (ax.source_line,),
                )
            )
    return out


def _subclass_facts(ax, cfg: NormalizationConfig) -> list:
    conjuncts = ax.rhs.children if isinstance(ax.rhs, And) else (ax.rhs,)
    facts = []
    for c in conjuncts:
        if isinstance(c, Atom):
            facts.append((ax.lhs, c.name))
        elif isinstance(c, Exists) and c.role in cfg.subclass_roles:
            facts.extend((ax.lhs, n) for n in _filler_names(c.filler) or ())
    return facts


def detect_duplicates(doc: OntologyDoc, cfg: NormalizationConfig) -> list:
    """Warn on axioms stated twice and on subclass facts asserted by more
    than one axiom."""
    out = []
    seen = defaultdict(list)
    for ax in doc.axioms:
        seen[ax].append(ax.source_line)
    for ax, lines in seen.items():
        if len(lines) > 1:
            out.append(
                Diagnostic(
                    WARNING,
                    "DuplicateAxiom",
                    [ax.lhs],
                    f"axiom for {ax.lhs} stated {len(lines)} times",
                    lines,
                )
            )
    facts = defaultdict(list)
    for ax in seen:
        for fact in set(_subclass_facts(ax, cfg)):
            facts[fact].append(seen[ax][0])
    for (child, parent), lines in sorted(facts.items()):
        if len(lines) > 1:
            out.append(
                Diagnostic(
                    WARNING,
                    "DuplicateAxiom",
                    [child, parent],
                    f"{child} is declared a subclass of {parent} by {len(lines)} axioms",
                    sorted(lines),
                )
            )
    return out


def detect_isolated_names(doc: OntologyDoc, graph: ConceptGraph) -> list:
    """Warn on names that occur in a single axiom and have no edge."""
    uses = Counter()
    for ax in doc.axioms:
        for n in {ax.lhs, *names_in(ax.rhs)}:
            uses[n] += 1
    connected = set()
    for a, b in graph.subclass_edges | graph.individual_edges:
        connected.update((a, b))
    for a, b, _ in graph.composition_edges:
        connected.update((a, b))
    out = []
    for name in sorted(n for n, k in uses.items() if k == 1 and n not in connected):
        out.append(
            Diagnostic(
                WARNING,
                "IsolatedName",
                [name],
                f"{name} is used only once and is not linked into the hierarchy",
                _lines_mentioning(doc, [name]),
            )
        )
    return out


def check(
    doc: OntologyDoc,
    graph: ConceptGraph,
    cfg: Optional[NormalizationConfig] = None,
) -> DiagnosticReport:
    """Run every detector and collect the results into one report."""
    cfg = cfg or NormalizationConfig()
    diags = []
    diags += detect_subclass_cycles(graph, doc)
    diags += detect_category_conflicts(graph, doc)
    diags += detect_reserved_role_misuse(doc, cfg)
    diags += detect_duplicates(doc, cfg)
    diags += detect_isolated_names(doc, graph)
    return DiagnosticReport.from_diagnostics(diags)
