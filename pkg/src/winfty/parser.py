"""Expression parser for the canonical element grammar (FORMAT.md, version 1).

parse() builds a small tuple-based AST; evaluate() interprets it against a
Session (dimension, coefficient ring, subalgebra flavor) and yields a
WeylElement or a Scalar.  The grammar round-trips with the printer:
parse(format_element(x)) evaluates back to x for every canonical element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .scalars import Scalar
from .weyl import FALLING, POWER, SubalgebraError, Weyl, WeylElement, bracket, mul


class ParseError(ValueError):
    """Syntax error, carrying the 0-based position in the input text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(ParseError):
    pass


@dataclass
class Session:
    """Evaluation context: the algebra plus the declared parameter names."""

    weyl: Weyl

    @property
    def n(self) -> int:
        return self.weyl.n

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.weyl.ring.symbols


# -- tokenizer -------------------------------------------------------------

_FRAC = r"-?\d+(?:/\d+)?"

_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<DDT>d/dt)
    | (?P<TPOW>t\^\((FRAC)\))
    | (?P<TVEC>t\[(FRAC)(?:,(FRAC))*\])
    | (?P<FALL>\[D(?:\d+)?\]_\d+)
    | (?P<NUM>\d+(?:/\d+)?)
    | (?P<DNAME>D\d*)
    | (?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<OP>[-+*^()\[\],])
    """.replace("FRAC", _FRAC),
    re.VERBOSE,
)

_FALL_RE = re.compile(r"\[D(\d*)\]_(\d+)")


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "WS":
            out.append(_Token(kind, m.group(), pos))
        pos = m.end()
    out.append(_Token("EOF", "", len(text)))
    return out


# -- AST -------------------------------------------------------------------
# Nodes are plain tuples: ("num", Fraction), ("name", str, pos), ("t", (Fraction,...)),
# ("d", index), ("fall", index, order), ("ddt",), ("neg", a), ("add", a, b),
# ("sub", a, b), ("mul", a, b), ("pow", a, int), ("br", a, b).

AST = tuple


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        t = self.cur
        self.i += 1
        return t

    def _expect(self, text: str):
        if self.cur.text != text:
            raise ParseError(f"expected {text!r}, found {self.cur.text!r}", self.cur.pos)
        return self._advance()

    def parse(self) -> AST:
        node = self.expr()
        if self.cur.kind != "EOF":
            raise ParseError(f"trailing input {self.cur.text!r}", self.cur.pos)
        return node

    def expr(self) -> AST:
        node = self.term()
        while self.cur.text in ("+", "-"):
            op = self._advance().text
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self) -> AST:
        node = self.unary()
        while self.cur.text == "*":
            self._advance()
            node = ("mul", node, self.unary())
        return node

    def unary(self) -> AST:
        if self.cur.text == "-":
            self._advance()
            return ("neg", self.unary())
        return self.power()

    def power(self) -> AST:
        node = self.atom()
        if self.cur.text == "^":
            tok = self._advance()
            e = self.cur
            if e.kind != "NUM" or "/" in e.text:
                raise ParseError("exponent must be a nonnegative integer", tok.pos + 1)
            self._advance()
            node = ("pow", node, int(e.text))
        return node

    def atom(self) -> AST:
        tok = self.cur
        if tok.kind == "NUM":
            self._advance()
            return ("num", Fraction(tok.text))
        if tok.kind == "TPOW":
            self._advance()
            return ("t", (Fraction(tok.text[3:-1]),))
        if tok.kind == "TVEC":
            self._advance()
            comps = tuple(Fraction(s) for s in tok.text[2:-1].split(","))
            return ("t", comps)
        if tok.kind == "FALL":
            self._advance()
            m = _FALL_RE.fullmatch(tok.text)
            idx = int(m.group(1)) - 1 if m.group(1) else 0
            return ("fall", idx, int(m.group(2)), tok.pos)
        if tok.kind == "DDT":
            self._advance()
            return ("ddt", tok.pos)
        if tok.kind == "DNAME":
            self._advance()
            idx = int(tok.text[1:]) - 1 if len(tok.text) > 1 else 0
            return ("d", idx, len(tok.text) > 1, tok.pos)
        if tok.kind == "NAME":
            self._advance()
            return ("name", tok.text, tok.pos)
        if tok.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if tok.text == "[":
            self._advance()
            lhs = self.expr()
            self._expect(",")
            rhs = self.expr()
            self._expect("]")
            return ("br", lhs, rhs)
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse(text: str) -> AST:
    """Parse an expression in the element grammar; raises ParseError."""
    return _Parser(text).parse()


# -- evaluation ------------------------------------------------------------


@dataclass
class _Mono:
    """A monomial under construction: coeff * t^gamma D^mu (or [D]_mu).

    Factors are merged without invoking the associative product as long as
    the written order matches the canonical normal form (all t's before all
    D's), which is exactly how the printer emits monomials.  Deferring the
    build also lets t-only prefixes appear inside W^(1)-mode expressions
    like "t^(1)*D" without tripping the subalgebra guard early.
    """

    n: int
    coeff: Union[Scalar, Fraction] = Fraction(1)
    gamma: tuple = ()
    mu: tuple = ()
    basis: str = POWER

    def __post_init__(self):
        if not self.gamma:
            self.gamma = (Fraction(0),) * self.n
        if not self.mu:
            self.mu = (0,) * self.n

    @property
    def has_d(self) -> bool:
        return any(self.mu)

    def finalize(self, weyl: Weyl) -> WeylElement:
        return weyl.monomial(self.gamma, self.mu, weyl.ring.coerce(self.coeff),
                             basis=self.basis)


Value = Union[Scalar, WeylElement, _Mono]


def _finalize(v: Value, weyl: Weyl) -> WeylElement:
    if isinstance(v, _Mono):
        return v.finalize(weyl)
    if isinstance(v, WeylElement):
        return v
    raise ParseError("expected an algebra element, found a scalar", 0)


def _mul_values(a: Value, b: Value, weyl: Weyl, pos: int) -> Value:
    ring = weyl.ring
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a * b
    if isinstance(a, Scalar) or isinstance(b, Scalar):
        s, other = (a, b) if isinstance(a, Scalar) else (b, a)
        if isinstance(other, _Mono):
            return _Mono(other.n, ring.coerce(other.coeff) * s, other.gamma,
                         other.mu, other.basis)
        return other.scale(s)
    if isinstance(a, _Mono) and isinstance(b, _Mono):
        # Merge when the written order is already normal (t's left of D's
        # factor-wise); otherwise fall back to the associative product.
        if not a.has_d or not any(g != 0 for g in b.gamma):
            if a.basis != b.basis and a.has_d and b.has_d:
                raise ParseError("cannot mix D-power and falling factors", pos)
            if a.basis == FALLING and b.basis == FALLING and any(
                    x and y for x, y in zip(a.mu, b.mu)):
                raise ParseError("repeated falling factor in one monomial", pos)
            basis = a.basis if a.has_d else b.basis
            return _Mono(a.n, ring.coerce(a.coeff) * ring.coerce(b.coeff),
                         tuple(x + y for x, y in zip(a.gamma, b.gamma)),
                         tuple(x + y for x, y in zip(a.mu, b.mu)), basis)
    return mul(_finalize(a, weyl), _finalize(b, weyl))


def _pow_value(a: Value, e: int, weyl: Weyl, pos: int) -> Value:
    if isinstance(a, Scalar):
        return a ** e
    if isinstance(a, _Mono):
        # Exponentiating a pure t-power or a pure D-power is exponent scaling;
        # anything mixed needs the associative product.
        pure = (not a.has_d) or not any(g != 0 for g in a.gamma)
        if pure and a.basis == POWER and a.coeff == 1:
            return _Mono(a.n, Fraction(1), tuple(g * e for g in a.gamma),
                         tuple(m * e for m in a.mu), POWER)
        a = _finalize(a, weyl)
    if e == 0:
        return weyl.one()
    acc = a
    for _ in range(e - 1):
        acc = mul(acc, a)
    return acc


def _neg_value(a: Value, weyl: Weyl) -> Value:
    if isinstance(a, Scalar):
        return -a
    if isinstance(a, _Mono):
        return _Mono(a.n, weyl.ring.coerce(a.coeff) * -1, a.gamma, a.mu, a.basis)
    return -a


def evaluate(node: AST, session: Session) -> Value:
    v = _eval(node, session)
    if isinstance(v, _Mono):
        return v.finalize(session.weyl)
    return v


def _eval(node: AST, session: Session) -> Value:
    weyl = session.weyl
    ring = weyl.ring
    kind = node[0]
    if kind == "num":
        return ring.const(node[1])
    if kind == "name":
        name, pos = node[1], node[2]
        if name == "C":
            if weyl.subalgebra != "hat":
                raise UnknownSymbolError(
                    "central element C requires the hat algebra", pos)
            return weyl.central(1)
        if name in ring.symbols:
            return ring.sym(name)
        raise UnknownSymbolError(f"unknown symbol {name!r}", pos)
    if kind == "t":
        gamma = node[1]
        if len(gamma) != weyl.n:
            raise ParseError(f"t-monomial has {len(gamma)} coordinates, "
                             f"session has n = {weyl.n}", 0)
        return _Mono(weyl.n, gamma=gamma)
    if kind == "d":
        idx, explicit, pos = node[1], node[2], node[3]
        if not explicit and weyl.n != 1:
            raise ParseError("bare D is ambiguous for n > 1; use D1..Dn", pos)
        if not 0 <= idx < weyl.n:
            raise ParseError(f"D{idx + 1} out of range for n = {weyl.n}", pos)
        mu = [0] * weyl.n
        mu[idx] = 1
        return _Mono(weyl.n, mu=tuple(mu))
    if kind == "fall":
        idx, order, pos = node[1], node[2], node[3]
        if not 0 <= idx < weyl.n:
            raise ParseError(f"falling index out of range for n = {weyl.n}", pos)
        mu = [0] * weyl.n
        mu[idx] = order
        return _Mono(weyl.n, mu=tuple(mu), basis=FALLING)
    if kind == "ddt":
        if weyl.n != 1:
            raise ParseError("d/dt requires n = 1", node[1])
        # d/dt is the element t^(-1) D; its powers go through the product,
        # which is what turns (d/dt)^2 into t^(-2) [D]_2 and not t^(-2) D^2.
        return weyl.monomial((-1,), (1,))
    if kind == "neg":
        return _neg_value(_eval(node[1], session), weyl)
    if kind == "add" or kind == "sub":
        a = _eval(node[1], session)
        b = _eval(node[2], session)
        if kind == "sub":
            b = _neg_value(b, weyl)
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        # A bare scalar summand stands for scalar * 1 (the identity
        # monomial); the w1/hat construction guard rejects it as needed.
        if isinstance(a, Scalar):
            a = _Mono(weyl.n, coeff=a)
        if isinstance(b, Scalar):
            b = _Mono(weyl.n, coeff=b)
        # A D-free monomial is basis-independent, so adopt the other
        # summand's basis (the printer omits basis markers when mu = 0).
        for u, v in ((a, b), (b, a)):
            if isinstance(u, _Mono) and not u.has_d:
                u.basis = v.basis
        a, b = _finalize(a, weyl), _finalize(b, weyl)
        if a.basis != b.basis:
            if a.max_mu() == 0:
                a = WeylElement(weyl, a.terms, b.basis, a.central)
            elif b.max_mu() == 0:
                b = WeylElement(weyl, b.terms, a.basis, b.central)
        return a + b
    if kind == "mul":
        a = _eval(node[1], session)
        b = _eval(node[2], session)
        return _mul_values(a, b, weyl, 0)
    if kind == "pow":
        return _pow_value(_eval(node[1], session), node[2], weyl, 0)
    if kind == "br":
        a = _finalize(_eval(node[1], session), weyl)
        b = _finalize(_eval(node[2], session), weyl)
        return bracket(a, b)
    raise AssertionError(f"unhandled node {kind}")


def parse_element(text: str, session: Session) -> Value:
    """parse + evaluate in one call."""
    return evaluate(parse(text), session)


def as_element(value: Value, weyl: Weyl) -> WeylElement:
    """Lift an evaluation result to a WeylElement (scalar c becomes c * 1)."""
    if isinstance(value, Scalar):
        return weyl.one().scale(value)
    return _finalize(value, weyl)
