"""Toolkit for building small ontologies from DL-style axioms.

Pipeline: parse ``.dlx`` axioms, normalize them into a concept graph,
check structural consistency, score competency-question coverage,
validate an upper-ontology alignment and emit OWL in RDF/XML.
"""

from ontobuild.model import (
    And,
    Atom,
    Axiom,
    ConceptExpr,
    ConceptGraph,
    ExactCard,
    Exists,
    ForAll,
    MinCard,
    NormalizationConfig,
    OntologyDoc,
    Or,
    ReservedRoleMisuse,
    RoleDecl,
    UnknownConcept,
    children,
    normalize,
    pretty_print,
)
from ontobuild.dsl import ParseError, ParseErrors, parse_axiom, parse_ontology, tokenize
from ontobuild.consistency import Diagnostic, DiagnosticReport, check
from ontobuild.srs import (
    CycleDetected,
    DuplicateQuestionId,
    QuestionMapping,
    SrsEntry,
    SrsReport,
    card,
    srs,
    srs_report,
)
from ontobuild.dolce import (
    AlignmentMap,
    AlignmentReport,
    DolceTaxonomy,
    MalformedTaxonomy,
    UnknownCategory,
    load_dolce,
    validate_alignment,
)
from ontobuild.owl import OwlDocument, UncleanGraph, UnsupportedElement, emit, reparse

__version__ = "0.1.0"

__all__ = [
    "AlignmentMap",
    "AlignmentReport",
    "And",
    "Atom",
    "Axiom",
    "card",
    "check",
    "children",
    "ConceptExpr",
    "ConceptGraph",
    "CycleDetected",
    "Diagnostic",
    "DiagnosticReport",
    "DolceTaxonomy",
    "DuplicateQuestionId",
    "emit",
    "ExactCard",
    "Exists",
    "ForAll",
    "load_dolce",
    "MalformedTaxonomy",
    "MinCard",
    "NormalizationConfig",
    "normalize",
    "OntologyDoc",
    "Or",
    "OwlDocument",
    "parse_axiom",
    "parse_ontology",
    "ParseError",
    "ParseErrors",
    "pretty_print",
    "QuestionMapping",
    "reparse",
    "ReservedRoleMisuse",
    "RoleDecl",
    "srs",
    "srs_report",
    "SrsEntry",
    "SrsReport",
    "tokenize",
    "UncleanGraph",
    "UnknownCategory",
    "UnknownConcept",
    "UnsupportedElement",
    "validate_alignment",
]
