"""Recursive-descent parser for the term and type surface syntax.

Grammar:

    input   ::= context? term
    context ::= "[" (name ":" type ("," name ":" type)*)? "]"
    term    ::= "\\" name ":" type "." term | app
    app     ::= atom atom*                      (left associative)
    atom    ::= name | "Y" "{" type "}" | "Omega" "{" type "}"
              | "#" nat "{" type "}" | "(" term ")"
    type    ::= atype ("->" type)?              (right associative)
    atype   ::= "o" | "(" type ")"

"--" starts a comment running to end of line.  Identifiers are
[A-Za-z_][A-Za-z0-9_']*; Y and Omega are reserved.  "#m{t}" abbreviates
the m-th Church numeral at numeral_type(t).  Free variables must be
declared in the context prefix; parse_term type-checks the result, so
ill-typed applications raise TypingError.
"""

from __future__ import annotations

from .terms import App, Lam, OmegaConst, Term, Var, YConst, church_numeral, type_of
from .types import Arrow, GROUND, SimpleType


class ParseError(Exception):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.pos = pos
        self.line = line
        self.column = col


_PUNCT = {
    "->": "ARROW",
    "\\": "LAMBDA",
    ".": "DOT",
    ":": "COLON",
    ",": "COMMA",
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    "[": "LBRACKET",
    "]": "RBRACKET",
    "#": "HASH",
}

RESERVED = {"Y", "Omega"}


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, lexeme, position) triples, terminated by ("EOF", "", len)."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if text.startswith("--", i):
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        if text.startswith("->", i):
            toks.append(("ARROW", "->", i))
            i += 2
            continue
        if c in _PUNCT:
            toks.append((_PUNCT[c], c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("NAT", text[i:j], i))
            i = j
            continue
        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            toks.append(("IDENT", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", text, i)
    toks.append(("EOF", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}",
                             self.text, tok[2])
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    # -- types ------------------------------------------------------------

    def type_(self) -> SimpleType:
        left = self.atomic_type()
        if self.peek()[0] == "ARROW":
            self.next()
            return Arrow(left, self.type_())
        return left

    def atomic_type(self) -> SimpleType:
        kind, lexeme, pos = self.next()
        if kind == "IDENT" and lexeme == "o":
            return GROUND
        if kind == "LPAREN":
            ty = self.type_()
            self.expect("RPAREN")
            return ty
        raise ParseError(f"expected a type, found {lexeme or 'end of input'!r}",
                         self.text, pos)

    def braced_type(self) -> SimpleType:
        self.expect("LBRACE")
        ty = self.type_()
        self.expect("RBRACE")
        return ty

    # -- terms ------------------------------------------------------------

    def context(self) -> dict[str, SimpleType]:
        ctx: dict[str, SimpleType] = {}
        if self.peek()[0] != "LBRACKET":
            return ctx
        self.next()
        if self.peek()[0] == "RBRACKET":
            self.next()
            return ctx
        while True:
            kind, name, pos = self.expect("IDENT")
            if name in RESERVED:
                raise ParseError(f"{name} is reserved", self.text, pos)
            self.expect("COLON")
            ctx[name] = self.type_()
            kind, lexeme, pos = self.next()
            if kind == "RBRACKET":
                return ctx
            if kind != "COMMA":
                raise ParseError("expected ',' or ']' in context", self.text, pos)

    def term(self, scope: dict[str, SimpleType]) -> Term:
        if self.peek()[0] == "LAMBDA":
            self.next()
            kind, name, pos = self.expect("IDENT")
            if name in RESERVED:
                raise ParseError(f"{name} is reserved", self.text, pos)
            self.expect("COLON")
            ty = self.type_()
            self.expect("DOT")
            inner = dict(scope)
            inner[name] = ty
            return Lam(name, ty, self.term(inner))
        return self.application(scope)

    def application(self, scope: dict[str, SimpleType]) -> Term:
        t = self.atom(scope)
        while self.peek()[0] in ("IDENT", "LPAREN", "HASH"):
            t = App(t, self.atom(scope))
        return t

    def atom(self, scope: dict[str, SimpleType]) -> Term:
        kind, lexeme, pos = self.next()
        if kind == "IDENT":
            if lexeme == "Y":
                return YConst(self.braced_type())
            if lexeme == "Omega":
                return OmegaConst(self.braced_type())
            ty = scope.get(lexeme)
            if ty is None:
                raise ParseError(f"unbound variable {lexeme}", self.text, pos)
            return Var(lexeme, ty)
        if kind == "HASH":
            _, digits, _ = self.expect("NAT")
            return church_numeral(int(digits), self.braced_type())
        if kind == "LPAREN":
            t = self.term(scope)
            self.expect("RPAREN")
            return t
        raise ParseError(f"expected a term, found {lexeme or 'end of input'!r}",
                         self.text, pos)


def parse_type(text: str) -> SimpleType:
    p = _Parser(text)
    ty = p.type_()
    kind, lexeme, pos = p.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {lexeme!r}", text, pos)
    return ty


def parse_term(text: str) -> Term:
    """Parse and type-check; the optional [x:t, ...] prefix types free variables."""
    p = _Parser(text)
    ctx = p.context()
    t = p.term(dict(ctx))
    kind, lexeme, pos = p.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {lexeme!r}", text, pos)
    type_of(t, ctx)
    return t


__all__ = ["ParseError", "parse_term", "parse_type", "tokenize"]
