"""Tokenizer and recursive-descent parser for the ``.dlx`` axiom language.

Grammar (one axiom per line, ``#`` starts a comment)::

    ontology := { axiom NEWLINE } ;
    axiom    := IDENT "sub" expr ;
    expr     := term { "or" term } ;
    term     := factor { "and" factor } ;
    factor   := IDENT | "(" expr ")"
              | "some" IDENT "." factor
              | "only" IDENT "." factor
              | ("min" | "exact") NAT IDENT [ "." factor ] ;

The DL symbols are accepted as aliases: ``⊑`` for sub, ``⊓``/``Π`` for
and, ``⊔``/``∨`` for or, ``∃`` some, ``∀`` only, ``≥`` min, ``=`` exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from ontobuild.model import (
    And,
    Atom,
    Axiom,
    ExactCard,
    Exists,
    ForAll,
    MinCard,
    OntologyDoc,
    Or,
)

KEYWORDS = {
    "sub": "Sub",
    "and": "And",
    "or": "Or",
    "some": "Some",
    "only": "Only",
    "min": "Min",
    "exact": "Exact",
}

SYMBOLS = {
    "⊑": "Sub",
    "⊓": "And",
    "Π": "And",
    "⊔": "Or",
    "∨": "Or",
    "∃": "Some",
    "∀": "Only",
    "≥": "Min",
    "=": "Exact",
    ".": "Dot",
    "(": "LParen",
    ")": "RParen",
}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    col: int


@dataclass
class ParseError(Exception):
    line: int
    col: int
    message: str
    expected: List[str] = field(default_factory=list)

    def __post_init__(self):
        super().__init__(str(self))

    def __str__(self):
        s = f"{self.line}:{self.col}: {self.message}"
        if self.expected:
            s += f" (expected {', '.join(self.expected)})"
        return s


class ParseErrors(Exception):
    """All errors found in one source; raised by :func:`parse_ontology`."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and ch.isalpha()


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def _tokenize_line(text: str, lineno: int) -> list:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            toks.append(Token(KEYWORDS.get(word, "Ident"), word, lineno, col))
            i = j
        elif ch.isascii() and ch.isdigit():
            j = i + 1
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            toks.append(Token("Nat", text[i:j], lineno, col))
            i = j
        elif ch in SYMBOLS:
            toks.append(Token(SYMBOLS[ch], ch, lineno, col))
            i += 1
        else:
            raise ParseError(lineno, col, f"illegal character {ch!r}")
    return toks


def tokenize(source: str) -> list:
    """Tokens of ``source``; one ``Newline`` token closes every non-empty line."""
    out = []
    for lineno, text in enumerate(source.splitlines(), start=1):
        toks = _tokenize_line(text, lineno)
        if toks:
            out.extend(toks)
            out.append(Token("Newline", "\n", lineno, len(text) + 1))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = list(tokens)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _error(self, message, expected):
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            line = last.line if last else 1
            col = last.col + len(last.lexeme) if last else 1
            return ParseError(line, col, f"{message}, got end of input", expected)
        what = "end of line" if tok.kind == "Newline" else repr(tok.lexeme)
        return ParseError(tok.line, tok.col, f"{message}, got {what}", expected)

    def expect(self, kind, message=None):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            raise self._error(message or f"expected {kind}", [kind])
        self.pos += 1
        return tok

    def at(self, kind):
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def axiom(self):
        lhs = self.expect("Ident", "axiom must start with an atomic class name")
        if self.at("LParen") or self.at("And") or self.at("Or"):
            raise self._error("left-hand side must be atomic", ["Sub"])
        self.expect("Sub")
        rhs = self.expr()
        if self.peek() is not None and not self.at("Newline"):
            raise self._error("unexpected token", ["And", "Or", "Newline"])
        return Axiom(lhs.lexeme, rhs, lhs.line)

    def expr(self):
        terms = [self.term()]
        while self.at("Or"):
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.at("And"):
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else And(tuple(factors))

    def factor(self):
        tok = self.peek()
        kind = tok.kind if tok else None
        if kind == "Ident":
            self.pos += 1
            return Atom(tok.lexeme)
        if kind == "LParen":
            self.pos += 1
            e = self.expr()
            self.expect("RParen")
            return e
        if kind in ("Some", "Only"):
            self.pos += 1
            role = self.expect("Ident", "expected role name").lexeme
            self.expect("Dot", "expected '.' between role and filler")
            filler = self.factor()
            return (Exists if kind == "Some" else ForAll)(role, filler)
        if kind in ("Min", "Exact"):
            self.pos += 1
            n = int(self.expect("Nat", "expected a cardinality").lexeme)
            role = self.expect("Ident", "expected role name").lexeme
            filler = None
            if self.at("Dot"):
                self.pos += 1
                filler = self.factor()
            return (MinCard if kind == "Min" else ExactCard)(n, role, filler)
        raise self._error(
            "expected a concept",
            ["Ident", "LParen", "Some", "Only", "Min", "Exact"],
        )


def parse_axiom(tokens) -> Axiom:
    """Parse one axiom from ``tokens`` (optionally ending in ``Newline``)."""
    return _Parser(tokens).axiom()


def parse_ontology(source: str, name: str = "") -> OntologyDoc:
    """Parse a whole ``.dlx`` source.

    Every line is tried; if any fail, :class:`ParseErrors` carries all of
    them in line order.
    """
    axioms, errors = [], []
    for lineno, text in enumerate(source.splitlines(), start=1):
        try:
            toks = _tokenize_line(text, lineno)
            if toks:
                axioms.append(parse_axiom(toks))
        except ParseError as err:
            errors.append(err)
    if errors:
        raise ParseErrors(errors)
    return OntologyDoc(tuple(axioms), name)
