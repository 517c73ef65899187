"""Concept expressions, axioms and the normalized concept graph."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _check_ident(name: str, what: str) -> None:
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise ValueError(f"invalid {what} identifier: {name!r}")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        _check_ident(self.name, "concept")


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("And needs at least two children")


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("Or needs at least two children")


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "ConceptExpr"

    def __post_init__(self):
        _check_ident(self.role, "role")


@dataclass(frozen=True)
class ForAll:
    role: str
    filler: "ConceptExpr"

    def __post_init__(self):
        _check_ident(self.role, "role")


@dataclass(frozen=True)
class MinCard:
    n: int
    role: str
    filler: Optional["ConceptExpr"] = None

    def __post_init__(self):
        _check_ident(self.role, "role")
        if self.n < 0:
            raise ValueError("cardinality must be >= 0")


@dataclass(frozen=True)
class ExactCard:
    n: int
    role: str
    filler: Optional["ConceptExpr"] = None

    def __post_init__(self):
        _check_ident(self.role, "role")
        if self.n < 0:
            raise ValueError("cardinality must be >= 0")


ConceptExpr = Union[Atom, And, Or, Exists, ForAll, MinCard, ExactCard]
Restriction = (Exists, ForAll, MinCard, ExactCard)


@dataclass(frozen=True)
class Axiom:
    """``lhs ⊑ rhs`` with an atomic left side.

    ``source_line`` is excluded from equality so that axioms read from
    different places (a file, an OWL comment) compare structurally.
    """

    lhs: str
    rhs: ConceptExpr
    source_line: int = field(default=1, compare=False)

    def __post_init__(self):
        _check_ident(self.lhs, "concept")


@dataclass(frozen=True)
class OntologyDoc:
    axioms: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))


@dataclass(frozen=True)
class NormalizationConfig:
    subclass_roles: frozenset = frozenset({"isA"})
    individual_roles: frozenset = frozenset({"IsIndividualOf"})
    composition_roles: frozenset = frozenset({"hasDivision"})

    def __post_init__(self):
        for name in ("subclass_roles", "individual_roles", "composition_roles"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        s, i, c = self.subclass_roles, self.individual_roles, self.composition_roles
        if s & i or s & c or i & c:
            raise ValueError("reserved role sets must be pairwise disjoint")

    @property
    def reserved(self) -> frozenset:
        return self.subclass_roles | self.individual_roles | self.composition_roles


@dataclass(frozen=True)
class RoleDecl:
    domains: frozenset
    ranges: frozenset


@dataclass(frozen=True, eq=True)
class ConceptGraph:
    classes: frozenset = frozenset()
    individuals: frozenset = frozenset()
    subclass_edges: frozenset = frozenset()  # (child, parent)
    individual_edges: frozenset = frozenset()  # (individual, class)
    composition_edges: frozenset = frozenset()  # (parent, child, role)
    roles: dict = field(default_factory=dict)  # role -> RoleDecl
    residual_axioms: tuple = ()

    __hash__ = None  # roles is a dict

    @property
    def names(self) -> frozenset:
        return self.classes | self.individuals


class ReservedRoleMisuse(ValueError):
    def __init__(self, axiom: Axiom, role: str, reason: str):
        self.axiom = axiom
        self.role = role
        super().__init__(f"line {axiom.source_line}: reserved role {role!r} {reason}")


class UnknownConcept(KeyError):
    pass


# --------------------------------------------------------------------------
# normalization


def _filler_names(expr) -> Optional[list]:
    """Atom or disjunction of atoms -> names; anything else -> None."""
    if isinstance(expr, Atom):
        return [expr.name]
    if isinstance(expr, Or) and all(isinstance(c, Atom) for c in expr.children):
        return [c.name for c in expr.children]
    return None


def reserved_role_misuses(axiom: Axiom, cfg: NormalizationConfig) -> list:
    """Return ``(role, reason)`` pairs for every illegal use of a reserved role.

    Reserved roles may only appear under ``some``, with an atomic (or
    disjunction-of-atoms) filler, either as the whole right side or as a
    direct conjunct of it.
    """
    reserved = cfg.reserved
    found = []

    def walk(expr, allowed: bool):
        if isinstance(expr, Atom):
            return
        if isinstance(expr, (And, Or)):
            for c in expr.children:
                walk(c, allowed and isinstance(expr, And))
            return
        if expr.role in reserved:
            if isinstance(expr, ForAll):
                found.append((expr.role, "used under 'only'"))
            elif isinstance(expr, (MinCard, ExactCard)):
                found.append((expr.role, "used under a cardinality restriction"))
            elif not allowed:
                found.append((expr.role, "nested inside another constructor"))
            elif _filler_names(expr.filler) is None:
                found.append((expr.role, "needs an atomic or disjunctive filler"))
        if expr.filler is not None:
            walk(expr.filler, False)

    walk(axiom.rhs, True)
    return found


def normalize(
    doc: OntologyDoc,
    cfg: Optional[NormalizationConfig] = None,
    strict: bool = True,
) -> ConceptGraph:
    """Turn parsed axioms into a :class:`ConceptGraph`.

    A name becomes a class when it is an axiom's left side or an endpoint of
    a subclass or composition edge; fillers of reserved individual roles
    become individuals. Names that only occur as ranges of ordinary roles or
    inside residual axioms are references, not declarations.

    With ``strict=False`` an axiom misusing a reserved role is kept as a
    residual instead of raising, so the consistency checker can report it.
    """
    cfg = cfg or NormalizationConfig()
    classes, individuals = set(), set()
    sub_edges, ind_edges, comp_edges = set(), set(), set()
    role_domains = defaultdict(set)
    role_ranges = defaultdict(set)
    residual = []

    def reserved_edges(lhs: str, role: str, names: list):
        if role in cfg.subclass_roles:
            for n in names:
                sub_edges.add((lhs, n))
                classes.add(n)
        elif role in cfg.individual_roles:
            for n in names:
                ind_edges.add((n, lhs))
                individuals.add(n)
        else:
            for n in names:
                comp_edges.add((lhs, n, role))
                classes.add(n)

    for ax in doc.axioms:
        classes.add(ax.lhs)
        misuse = reserved_role_misuses(ax, cfg)
        if misuse:
            if strict:
                role, reason = misuse[0]
                raise ReservedRoleMisuse(ax, role, reason)
            residual.append(ax)
            continue

        rhs = ax.rhs
        if isinstance(rhs, Atom):
            sub_edges.add((ax.lhs, rhs.name))
            classes.add(rhs.name)
            continue

        if isinstance(rhs, (Exists, ForAll)):
            names = _filler_names(rhs.filler)
            if names is not None:
                if rhs.role in cfg.reserved:
                    reserved_edges(ax.lhs, rhs.role, names)
                else:
                    role_domains[rhs.role].add(ax.lhs)
                    role_ranges[rhs.role].update(names)
                continue

        residual.append(ax)
        if isinstance(rhs, And):
            for conj in rhs.children:
                if isinstance(conj, Atom):
                    sub_edges.add((ax.lhs, conj.name))
                    classes.add(conj.name)
                elif isinstance(conj, Exists) and conj.role in cfg.reserved:
                    reserved_edges(ax.lhs, conj.role, _filler_names(conj.filler))

    roles = {
        r: RoleDecl(frozenset(role_domains[r]), frozenset(role_ranges[r]))
        for r in sorted(role_domains)
    }
    return ConceptGraph(
        classes=frozenset(classes),
        individuals=frozenset(individuals),
        subclass_edges=frozenset(sub_edges),
        individual_edges=frozenset(ind_edges),
        composition_edges=frozenset(comp_edges),
        roles=roles,
        residual_axioms=tuple(residual),
    )


def child_index(graph: ConceptGraph, cfg: Optional[NormalizationConfig] = None) -> dict:
    """Map every node to its sorted children (subclasses, individuals and
    composition children under ``cfg.composition_roles``)."""
    cfg = cfg or NormalizationConfig()
    kids = defaultdict(set)
    for child, parent in graph.subclass_edges:
        kids[parent].add(child)
    for ind, cls in graph.individual_edges:
        kids[cls].add(ind)
    for parent, child, role in graph.composition_edges:
        if role in cfg.composition_roles:
            kids[parent].add(child)
    return {n: tuple(sorted(kids.get(n, ()))) for n in graph.names}


def children(graph: ConceptGraph, cfg: Optional[NormalizationConfig], c: str) -> tuple:
    if c not in graph.names:
        raise UnknownConcept(c)
    return child_index(graph, cfg)[c]


# --------------------------------------------------------------------------
# canonical ASCII rendering


def _render(expr, ctx: str) -> str:
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, Or):
        return "(" + " or ".join(_render(c, "or") for c in expr.children) + ")"
    if isinstance(expr, And):
        s = " and ".join(_render(c, "and") for c in expr.children)
        return f"({s})" if ctx in ("and", "factor") else s
    if isinstance(expr, Exists):
        return f"some {expr.role} . {_render(expr.filler, 'factor')}"
    if isinstance(expr, ForAll):
        return f"only {expr.role} . {_render(expr.filler, 'factor')}"
    if isinstance(expr, (MinCard, ExactCard)):
        kw = "min" if isinstance(expr, MinCard) else "exact"
        s = f"{kw} {expr.n} {expr.role}"
        if expr.filler is not None:
            s += f" . {_render(expr.filler, 'factor')}"
        return s
    raise TypeError(f"not a concept expression: {expr!r}")


def pretty_print(obj) -> str:
    """Canonical ASCII form of an expression or axiom; the parser reads it back."""
    if isinstance(obj, Axiom):
        return f"{obj.lhs} sub {_render(obj.rhs, 'top')}"
    return _render(obj, "top")


def names_in(expr) -> Iterable[str]:
    """Concept names (not roles) occurring in ``expr``, in order."""
    if isinstance(expr, Atom):
        yield expr.name
    elif isinstance(expr, (And, Or)):
        for c in expr.children:
            yield from names_in(c)
    elif expr is not None:
        yield from names_in(expr.filler)
