"""Parameterized relation language.

Relations are written the way they are typeset, with the height ``s`` and
prime ``p`` left symbolic::

    c*(c + x1 + v*sum(i=1..s-1, c^(2^s-2^i)*x2^(2^(i-1))))

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ['^' expo]
    base   := ident | int | '(' expr ')' | 'sum' '(' ident '=' arith '..' arith ',' expr ')'
    expo   := int | ident | '(' arith ')'
    arith  := integer arithmetic with + - * ^ and parentheses

Inside ``arith`` the usual precedence applies (``^`` binds tightest and is
right associative).  ``parse`` never resolves names; unknown identifiers are
reported by ``instantiate``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import NegativeExponent, RelationSyntaxError, UnknownName
from .polys.ring import CoefficientSpec, Polynomial, PolyRing

PARAMS = ("s", "p")


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class Param:
    """Identifier inside an exponent: ``s``, ``p`` or a bound summation index."""
    name: str


@dataclass(frozen=True)
class BinOp:
    """Integer arithmetic inside exponents and summation bounds."""
    op: str
    left: "Arith"
    right: "Arith"


@dataclass(frozen=True)
class Add:
    """``terms[0] (sign term)*``; ``signs[k]`` is '+' or '-' for ``terms[k+1]``."""
    terms: tuple
    signs: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Arith"


@dataclass(frozen=True)
class Sum:
    index: str
    lower: "Arith"
    upper: "Arith"
    body: "Node"


Arith = Union[IntConst, Param, BinOp]
Node = Union[Var, IntConst, Add, Mul, Pow, Sum]
RelationTemplate = Node


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9]*)"
                    r"|(?P<op>\.\.|[-+*^(),=]))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise RelationSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise RelationSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def fail(self, what):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end" else repr(val)
        raise RelationSyntaxError(f"expected {what}, found {found}", pos)

    # polynomial level
    def expr(self):
        terms = [self.term()]
        signs = []
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            signs.append(self.take()[1])
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        return Add(tuple(terms), tuple(signs))

    def term(self):
        factors = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self):
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return Pow(base, self.expo())
        return base

    def base(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return IntConst(int(val))
        if kind == "ident":
            self.take()
            if val == "sum" and self.peek()[:2] == ("op", "("):
                return self.sum_node()
            return Var(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("a variable, integer, '(' or sum(...)")

    def sum_node(self):
        self.expect("(")
        kind, name, pos = self.take()
        if kind != "ident":
            raise RelationSyntaxError("expected summation index", pos)
        if name in PARAMS or name == "sum":
            raise RelationSyntaxError(f"summation index {name!r} shadows a reserved name", pos)
        self.expect("=")
        lower = self.arith()
        self.expect("..")
        upper = self.arith()
        self.expect(",")
        body = self.expr()
        self.expect(")")
        return Sum(name, lower, upper, body)

    # exponent level
    def expo(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return IntConst(int(val))
        if kind == "ident":
            self.take()
            return Param(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.arith()
            self.expect(")")
            return node
        self.fail("an exponent")

    def arith(self):
        node = self.arith_term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.arith_term())
        return node

    def arith_term(self):
        node = self.arith_pow()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.arith_pow())
        return node

    def arith_pow(self):
        base = self.expo()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.arith_pow())
        return base


def parse(text: str) -> RelationTemplate:
    """Parse relation text into an AST; raises ``RelationSyntaxError``."""
    parser = _Parser(text)
    node = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise RelationSyntaxError(f"unexpected {val!r}", pos)
    return node


# -- printer -----------------------------------------------------------------

_ARITH_PREC = {"+": 1, "-": 1, "*": 2, "^": 3}


def _arith_str(node):
    if isinstance(node, IntConst):
        return str(node.value)
    if isinstance(node, Param):
        return node.name
    prec = _ARITH_PREC[node.op]

    def side(child, right):
        s = _arith_str(child)
        if isinstance(child, BinOp):
            cp = _ARITH_PREC[child.op]
            # '+', '-', '*' associate left, '^' right
            if cp < prec or (cp == prec and right != (node.op == "^")):
                return f"({s})"
        return s

    return f"{side(node.left, False)}{node.op}{side(node.right, True)}"


def _expo_str(node):
    if isinstance(node, (IntConst, Param)):
        return _arith_str(node)
    return f"({_arith_str(node)})"


def to_text(node: Node) -> str:
    """Canonical text; ``parse(to_text(t)) == t`` for every AST."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, IntConst):
        return str(node.value)
    if isinstance(node, Add):
        parts = [f"({to_text(t)})" if isinstance(t, Add) else to_text(t) for t in node.terms]
        out = parts[0]
        for sign, t in zip(node.signs, parts[1:]):
            out += f" {sign} {t}"
        return out
    if isinstance(node, Mul):
        return "*".join(f"({to_text(f)})" if isinstance(f, (Add, Mul)) else to_text(f)
                        for f in node.factors)
    if isinstance(node, Pow):
        b = to_text(node.base)
        if isinstance(node.base, (Add, Mul, Pow)):
            b = f"({b})"
        return f"{b}^{_expo_str(node.exponent)}"
    if isinstance(node, Sum):
        return (f"sum({node.index}={_arith_str(node.lower)}..{_arith_str(node.upper)}, "
                f"{to_text(node.body)})")
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation --------------------------------------------------------------

def evaluate_arith(node: Arith, env: Mapping[str, int]) -> int:
    if isinstance(node, IntConst):
        return node.value
    if isinstance(node, Param):
        if node.name not in env:
            raise UnknownName(f"unknown parameter {node.name!r} in exponent")
        return env[node.name]
    a = evaluate_arith(node.left, env)
    b = evaluate_arith(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b < 0:
        raise NegativeExponent(f"negative power {a}^{b} in exponent arithmetic")
    return a ** b


def instantiate(template: RelationTemplate | str, spec: CoefficientSpec | Mapping[str, int],
                ring: PolyRing) -> Polynomial:
    """Concrete polynomial in ``ring`` for the given parameters.

    ``spec`` is a ``CoefficientSpec`` or a plain mapping of parameter values
    (used for ideals that are not tied to a height).
    """
    if isinstance(template, str):
        template = parse(template)
    if isinstance(spec, CoefficientSpec):
        if spec.p != ring.p:
            raise UnknownName(f"coefficient prime {spec.p} differs from ring prime {ring.p}")
        env = {"s": spec.s, "p": spec.p}
    else:
        env = dict(spec)
        env.setdefault("p", ring.p)
    return _eval(template, env, ring)


def _eval(node, env, ring):
    if isinstance(node, Var):
        if node.name in ring.index:
            return ring.gen(node.name)
        if node.name in env:
            return ring.constant(env[node.name])
        raise UnknownName(f"undeclared identifier {node.name!r}")
    if isinstance(node, IntConst):
        return ring.constant(node.value)
    if isinstance(node, Add):
        out = _eval(node.terms[0], env, ring)
        for sign, t in zip(node.signs, node.terms[1:]):
            v = _eval(t, env, ring)
            out = out + v if sign == "+" else out - v
        return out
    if isinstance(node, Mul):
        out = ring.one()
        for f in node.factors:
            out = out * _eval(f, env, ring)
        return out
    if isinstance(node, Pow):
        e = evaluate_arith(node.exponent, env)
        if e < 0:
            raise NegativeExponent(f"exponent {_arith_str(node.exponent)} evaluates to {e}")
        return _eval(node.base, env, ring) ** e
    if isinstance(node, Sum):
        if node.index in ring.index:
            raise UnknownName(f"summation index {node.index!r} shadows a variable")
        lo = evaluate_arith(node.lower, env)
        hi = evaluate_arith(node.upper, env)
        out = ring.zero()
        for k in range(lo, hi + 1):
            out = out + _eval(node.body, {**env, node.index: k}, ring)
        return out
    raise TypeError(f"not an AST node: {node!r}")


def names_used(node: Node) -> set[str]:
    """Polynomial-level identifiers (variables), excluding bound indices."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Add):
        return set().union(*(names_used(t) for t in node.terms))
    if isinstance(node, Mul):
        return set().union(*(names_used(f) for f in node.factors))
    if isinstance(node, Pow):
        return names_used(node.base)
    if isinstance(node, Sum):
        return names_used(node.body) - {node.index}
    return set()
