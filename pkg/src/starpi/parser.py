"""Recursive-descent parser for *-polynomial and Grassmann expressions.

Polynomial grammar::

    poly   := ['-'] term (('+' | '-') term)*  |  '0'
    term   := [coef '*'] factor ('*' factor)*
    factor := atom ["'"]                 # postfix ' is the involution
    atom   := var | '(' poly ')' | '[' poly ',' poly ']'
    var    := ('y' | 'z') integer ['@' grade]
    coef   := integer ['/' integer]

``[p, q]`` expands to ``p*q - q*p``. The parser first builds a small syntax
tree whose nodes carry source spans, then folds it to a polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .grassmann import GrassmannElement
from .poly import Kind, StarPolynomial, Variable

_TOKEN = re.compile(
    r"\s*(?:(?P<var>[yz])(?P<idx>\d+)(?:@(?P<grade>\d+))?"
    r"|(?P<int>\d+)"
    r"|(?P<gen>e\{[^}]*\})"
    r"|(?P<op>[-+*/()\[\],']))"
)


@dataclass
class Token:
    kind: str
    text: str
    start: int
    end: int
    value: object = None


def tokenize(text: str, allow_grassmann: bool = False) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.group("var"):
            start = m.start("var")
            idx = int(m.group("idx"))
            if idx < 1:
                raise ParseError("variable index must be positive", text, m.start("idx"))
            g = m.group("grade")
            if g is not None:
                g = int(g)
                if g > 3:
                    raise ParseError(f"grade {g} outside 0..3", text, m.start("grade"))
            kind = Kind.SYM if m.group("var") == "y" else Kind.SKEW
            out.append(Token("var", m.group(0).strip(), start, m.end(), Variable(kind, idx, g)))
        elif m.group("int"):
            out.append(Token("int", m.group("int"), m.start("int"), m.end(), int(m.group("int"))))
        elif m.group("gen"):
            if not allow_grassmann:
                raise ParseError("Grassmann monomial in a polynomial expression", text, m.start("gen"))
            out.append(Token("gen", m.group("gen"), m.start("gen"), m.end()))
        else:
            out.append(Token(m.group("op"), m.group("op"), m.start("op"), m.end()))
        pos = m.end()
    out.append(Token("end", "", n, n))
    return out


# syntax tree

@dataclass
class Node:
    span: tuple


@dataclass
class Var(Node):
    var: Variable


@dataclass
class Sum(Node):
    terms: list  # (sign, Node)


@dataclass
class Product(Node):
    coef: Fraction
    factors: list


@dataclass
class Star(Node):
    arg: Node


@dataclass
class Bracket(Node):
    left: Node
    right: Node


@dataclass
class Zero(Node):
    pass


class _Parser:
    def __init__(self, text, tokens):
        self.text = text
        self.toks = tokens
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.start)

    def take(self, kind):
        t = self.tok
        if t.kind != kind:
            what = "end of input" if t.kind == "end" else repr(t.text)
            self.error(f"expected {kind!r}, found {what}")
        self.i += 1
        return t

    def poly(self):
        start = self.tok.start
        if self.tok.kind == "int" and self.tok.value == 0 and self.toks[self.i + 1].kind in ("end", ")", ",", "]"):
            self.i += 1
            return Zero((start, self.toks[self.i - 1].end))
        terms = []
        sign = 1
        if self.tok.kind == "-":
            self.i += 1
            sign = -1
        terms.append((sign, self.term()))
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.take(self.tok.kind).kind == "+" else -1
            terms.append((sign, self.term()))
        return Sum((start, self.toks[self.i - 1].end), terms)

    def term(self):
        start = self.tok.start
        coef = Fraction(1)
        if self.tok.kind == "int":
            num = self.take("int")
            den = 1
            if self.tok.kind == "/":
                self.i += 1
                dt = self.take("int")
                den = dt.value
                if den == 0:
                    self.error("zero denominator", dt)
            coef = Fraction(num.value, den)
            self.take("*")
        factors = [self.factor()]
        while self.tok.kind == "*":
            self.i += 1
            factors.append(self.factor())
        return Product((start, self.toks[self.i - 1].end), coef, factors)

    def factor(self):
        start = self.tok.start
        node = self.atom()
        while self.tok.kind == "'":
            self.i += 1
            node = Star((start, self.toks[self.i - 1].end), node)
        return node

    def atom(self):
        t = self.tok
        if t.kind == "var":
            self.i += 1
            return Var((t.start, t.end), t.value)
        if t.kind == "(":
            self.i += 1
            inner = self.poly()
            self.take(")")
            return inner
        if t.kind == "[":
            self.i += 1
            left = self.poly()
            self.take(",")
            right = self.poly()
            end = self.take("]")
            return Bracket((t.start, end.end), left, right)
        what = "end of input" if t.kind == "end" else repr(t.text)
        self.error(f"expected a variable, '(' or '[', found {what}")


def parse_tree(text: str) -> Node:
    p = _Parser(text, tokenize(text))
    if p.tok.kind == "end":
        p.error("empty expression")
    node = p.poly()
    if p.tok.kind != "end":
        p.error(f"unexpected {p.tok.text!r}")
    return node


def fold(node: Node) -> StarPolynomial:
    if isinstance(node, Zero):
        return StarPolynomial.zero()
    if isinstance(node, Var):
        return StarPolynomial.from_variable(node.var)
    if isinstance(node, Sum):
        acc = StarPolynomial.zero()
        for sign, t in node.terms:
            v = fold(t)
            acc = acc + v if sign > 0 else acc - v
        return acc
    if isinstance(node, Product):
        acc = fold(node.factors[0])
        for f in node.factors[1:]:
            acc = acc * fold(f)
        return acc.scale(node.coef)
    if isinstance(node, Star):
        return fold(node.arg).involute()
    if isinstance(node, Bracket):
        a, b = fold(node.left), fold(node.right)
        return a * b - b * a
    raise TypeError(node)


def parse_poly(text: str) -> StarPolynomial:
    """Parse an expression into a canonical StarPolynomial."""
    return fold(parse_tree(text))


def parse_grassmann(text: str, n_generators: int) -> GrassmannElement:
    """Parse ``[coef*]e{i,j,...}`` terms joined by + and -, or a bare rational.

    ``e{i,j,...}`` means the product e_i e_j ... in the given order, so
    unsorted lists pick up the sign of the reordering; ``e{}`` is the unit.
    """
    toks = tokenize(text, allow_grassmann=True)
    i = 0
    acc = GrassmannElement(n_generators)

    def err(msg, t):
        raise ParseError(msg, text, t.start)

    sign = 1
    if toks[0].kind == "end":
        err("empty expression", toks[0])
    if toks[0].kind == "-":
        sign, i = -1, 1
    while True:
        coef = Fraction(1)
        t = toks[i]
        if t.kind == "int":
            num = t.value
            i += 1
            den = 1
            if toks[i].kind == "/":
                if toks[i + 1].kind != "int":
                    err("expected a denominator", toks[i + 1])
                den = toks[i + 1].value
                if den == 0:
                    err("zero denominator", toks[i + 1])
                i += 2
            coef = Fraction(num, den)
            if toks[i].kind == "*":
                i += 1
                t = toks[i]
            else:
                acc = acc + GrassmannElement.unit(n_generators).scale(sign * coef)
                t = None
        if t is not None:
            if t.kind != "gen":
                err("expected a Grassmann monomial e{...}", t)
            body = t.text[2:-1].strip()
            try:
                gens = [int(x) for x in body.split(",")] if body else []
            except ValueError:
                err("malformed generator list", t)
            term = GrassmannElement.unit(n_generators)
            for g in gens:
                if not 1 <= g <= n_generators:
                    err(f"generator e{g} outside 1..{n_generators}", t)
                term = term * GrassmannElement.generator(n_generators, g)
            acc = acc + term.scale(sign * coef)
            i += 1
        if toks[i].kind == "end":
            return acc
        if toks[i].kind not in ("+", "-"):
            err(f"unexpected {toks[i].text!r}", toks[i])
        sign = 1 if toks[i].kind == "+" else -1
        i += 1


def read_generators(path) -> list[StarPolynomial]:
    """One expression per line; blank lines and lines starting with # are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                out.append(parse_poly(s))
            except ParseError as exc:
                raise ParseError(f"{path}:{n}: syntax error", s, exc.pos) from None
    return out
