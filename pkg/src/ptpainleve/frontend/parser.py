"""Tokenizer, recursive-descent parser and pretty-printer for PDE definitions.

Grammar::

    system := "pde" IDENT "{" decl* "equation" ":" expr "=" expr "}"
    decl   := "field" IDENT "(" IDENT "," IDENT ")"
            | "param" IDENT [":" ("real" | "int" | "complex")]
    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ["^" unary]
    atom   := INT | "i" | IDENT | "(" expr ")" | "dt" "(" IDENT ")"
            | ("D" | "D2" | "D3") "(" IDENT ";" expr ")"
            | "Dn" "(" IDENT "," INT ";" expr ")"

``#`` starts a comment running to the end of the line.  Identifiers of the
form ``u_xt`` denote ordinary partial derivatives of a declared field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import PDEParseError
from .ast import ATOM_PREC, NEG_PREC, BinOp, Dt, Imag, Jet, Name, Neg, Node, Num, Slot, precedence

KEYWORDS = {"pde", "field", "param", "equation", "real", "int", "complex", "dt", "D", "D2", "D3", "Dn", "i"}
SLOT_ORDERS = {"D": 1, "D2": 2, "D3": 3}
PUNCT = set("{}()[],;:=+-*/^")


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, PUNCT, EOF
    text: str
    line: int
    col: int


def _decode(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        try:
            return bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(source)[: exc.start].decode("utf-8", errors="replace")
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            raise PDEParseError("invalid UTF-8 byte sequence", line, col) from None
    return source


def tokenize(source) -> Iterator[Token]:
    text = _decode(source)
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield Token("IDENT", text[i:j], line, col)
            col += j - i
            i = j
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            yield Token("INT", text[i:j], line, col)
            col += j - i
            i = j
            continue
        if ch in PUNCT:
            yield Token("PUNCT", ch, line, col)
            i += 1
            col += 1
            continue
        raise PDEParseError(f"unexpected character {ch!r}", line, col)
    yield Token("EOF", "", line, col)


@dataclass(frozen=True)
class SystemSyntax:
    """Raw parse result before semantic checks."""

    name: str
    field: str | None
    variables: tuple[str, ...]
    parameters: tuple[tuple[str, str], ...]
    lhs: Node
    rhs: Node
    line: int = 1
    col: int = 1


class Parser:
    def __init__(self, source):
        self.tokens = list(tokenize(source))
        self.pos = 0

    # helpers --------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise PDEParseError(f"{msg}, found {self._describe(tok)}", tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind in ("PUNCT", "IDENT") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        tok = self.tok
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            self.error(f"expected {what}")
        return self.advance()

    # grammar --------------------------------------------------------------
    def parse_system(self) -> SystemSyntax:
        start = self.expect("pde")
        name = self.ident("system name").text
        self.expect("{")
        fld = None
        variables: tuple[str, ...] = ()
        params: list[tuple[str, str]] = []
        while not self.at("equation"):
            if self.at("field"):
                kw = self.advance()
                if fld is not None:
                    raise PDEParseError("only one field may be declared", kw.line, kw.col)
                fld = self.ident("field name").text
                self.expect("(")
                a = self.ident("independent variable").text
                self.expect(",")
                b = self.ident("independent variable").text
                self.expect(")")
                variables = (a, b)
            elif self.at("param"):
                self.advance()
                pname = self.ident("parameter name").text
                domain = "real"
                if self.at(":"):
                    self.advance()
                    if self.tok.text not in ("real", "int", "complex") or self.tok.kind != "IDENT":
                        self.error("expected 'real', 'int' or 'complex'")
                    domain = self.advance().text
                params.append((pname, domain))
            else:
                self.error("expected 'field', 'param' or 'equation'")
        self.expect("equation")
        self.expect(":")
        lhs = self.expr()
        self.expect("=")
        rhs = self.expr()
        self.expect("}")
        if self.tok.kind != "EOF":
            self.error("expected end of input")
        return SystemSyntax(name, fld, variables, tuple(params), lhs, rhs, start.line, start.col)

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.line, op.col)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            node = BinOp(op.text, node, self.unary(), op.line, op.col)
        return node

    def unary(self) -> Node:
        if self.at("-"):
            op = self.advance()
            return Neg(self.unary(), op.line, op.col)
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.at("^"):
            op = self.advance()
            node = BinOp("^", node, self.unary(), op.line, op.col)
        return node

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "INT":
            self.advance()
            return Num(int(tok.text), tok.line, tok.col)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "IDENT":
            self.error("expected an expression")
        if tok.text == "i":
            self.advance()
            return Imag(tok.line, tok.col)
        if tok.text == "dt":
            self.advance()
            self.expect("(")
            f = self.ident("field name").text
            self.expect(")")
            return Dt(f, tok.line, tok.col)
        if tok.text in SLOT_ORDERS or tok.text == "Dn":
            self.advance()
            self.expect("(")
            f = self.ident("field name").text
            if tok.text == "Dn":
                self.expect(",")
                if self.tok.kind != "INT":
                    self.error("expected derivative order")
                order = int(self.advance().text)
                if order < 1:
                    raise PDEParseError("derivative order must be >= 1", tok.line, tok.col)
            else:
                order = SLOT_ORDERS[tok.text]
            self.expect(";")
            exponent = self.expr()
            self.expect(")")
            return Slot(order, f, exponent, tok.line, tok.col)
        if tok.text in KEYWORDS:
            self.error("expected an expression")
        self.advance()
        if "_" in tok.text:
            base, _, derivs = tok.text.partition("_")
            if base and derivs and "_" not in derivs:
                return Jet(base, derivs, tok.line, tok.col)
            raise PDEParseError(f"malformed derivative name {tok.text!r}", tok.line, tok.col)
        return Name(tok.text, tok.line, tok.col)


def parse_syntax(source) -> SystemSyntax:
    return Parser(source).parse_system()


def parse_expression(source) -> Node:
    p = Parser(source)
    node = p.expr()
    if p.tok.kind != "EOF":
        p.error("expected end of expression")
    return node


# ---------------------------------------------------------------------------
# pretty-printing


def format_node(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Jet):
        return f"{node.field}_{node.derivs}"
    if isinstance(node, Dt):
        return f"dt({node.field})"
    if isinstance(node, Slot):
        exp = format_node(node.exponent)
        if node.order in (1, 2, 3):
            name = "D" if node.order == 1 else f"D{node.order}"
            return f"{name}({node.field}; {exp})"
        return f"Dn({node.field}, {node.order}; {exp})"
    if isinstance(node, Neg):
        inner = format_node(node.operand)
        if precedence(node.operand) < NEG_PREC:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, BinOp):
        p = precedence(node)
        left = format_node(node.left)
        right = format_node(node.right)
        if node.op == "^":
            if precedence(node.left) < ATOM_PREC:
                left = f"({left})"
            if precedence(node.right) < NEG_PREC:
                right = f"({right})"
            return f"{left}^{right}"
        if precedence(node.left) < p:
            left = f"({left})"
        if precedence(node.right) <= p:
            right = f"({right})"
        sep = f" {node.op} " if p == 1 else node.op
        return f"{left}{sep}{right}"
    raise TypeError(f"unknown node {node!r}")


def format_syntax(s: SystemSyntax) -> str:
    lines = [f"pde {s.name} {{"]
    if s.field is not None:
        lines.append(f"  field {s.field}({', '.join(s.variables)})")
    for name, domain in s.parameters:
        lines.append(f"  param {name}: {domain}")
    lines.append(f"  equation: {format_node(s.lhs)} = {format_node(s.rhs)}")
    lines.append("}")
    return "\n".join(lines) + "\n"
