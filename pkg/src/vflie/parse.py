"""Recursive-descent parser and canonical printer for polynomials, vector fields
and bracket words.

Grammar (whitespace is ignored)::

    sum     := ['+' | '-'] product (('+' | '-') product)*
    product := factor ('*' factor)*
    factor  := NUM ['/' NUM] | VAR ['^' NUM] | DIR | '(' scalar ')'
    scalar  := ['+' | '-'] sprod (('+' | '-') sprod)*      # inside parentheses
    sprod   := sfact ('*' sfact)*
    sfact   := NUM ['/' NUM] | 'z' ['^' NUM]               # z is the root of unity

VAR is one of x, y, z (variables 0, 1, 2) and DIR one of dx, dy, dz.  A
vector-field term carries exactly one DIR factor; polynomial terms carry none.
Multiplication must be written with '*'.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .poly import Poly
from .scalar import QQ, Cyclotomic, CyclotomicField, format_rational, qdiv

VARS = "xyz"
DIRS = ("dx", "dy", "dz")


class ParseError(ValueError):
    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {position}: expected {expected}, found {found!r}")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, one of "+-*/^()", or END
    text: str
    pos: int  # byte offset


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while True:
        m = _TOKEN.match(text, i)
        if m is None:
            rest = text[i:].lstrip()
            if not rest:
                break
            j = n - len(rest)
            raise ParseError(_offset(text, j), "a number, variable, operator or parenthesis", rest[0])
        start = m.start(m.lastindex)
        kind = "NUM" if m.group(1) else "IDENT" if m.group(2) else m.group(3)
        out.append(Token(kind, m.group(m.lastindex), _offset(text, start)))
        i = m.end()
    out.append(Token("END", "", _offset(text, n)))
    return out


def _offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, arity: int, field, vector: bool):
        if not 1 <= arity <= len(VARS):
            raise ValueError(f"arity must be between 1 and {len(VARS)}")
        self.toks = tokenize(text)
        self.i = 0
        self.arity = arity
        self.field = field
        self.vector = vector

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected: str):
        t = self.tok
        raise ParseError(t.pos, expected, t.text or "end of input")

    def expect(self, kind: str, expected: str) -> Token:
        if self.tok.kind != kind:
            self.fail(expected)
        return self.advance()

    # -- top level --------------------------------------------------------

    def parse(self):
        terms: dict = {}
        first = True
        while True:
            sign = 1
            if self.tok.kind in ("+", "-"):
                sign = -1 if self.advance().kind == "-" else 1
            elif not first:
                self.fail("'+', '-' or end of input")
            if first and self.tok.kind == "END":
                self.fail("a term")
            key, c = self.product()
            c = c * sign
            terms[key] = terms.get(key, 0) + c
            first = False
            if self.tok.kind == "END":
                break
            if self.tok.kind not in ("+", "-"):
                self.fail("'*', '+', '-' or end of input")
        return terms

    def product(self):
        coeff = self.field.one if isinstance(self.field, CyclotomicField) else 1
        exps = [0] * self.arity
        direction = None
        zero_literal = False
        while True:
            t = self.tok
            if t.kind == "NUM":
                q = self.number()
                coeff = coeff * q
                zero_literal = zero_literal or q == 0
            elif t.kind == "(":
                self.advance()
                coeff = coeff * self.scalar()
                self.expect(")", "')'")
            elif t.kind == "IDENT" and t.text in VARS:
                k = VARS.index(t.text)
                if k >= self.arity:
                    self.fail(f"a variable among {VARS[: self.arity]!r}")
                self.advance()
                e = 1
                if self.tok.kind == "^":
                    self.advance()
                    e = int(self.expect("NUM", "an integer exponent").text)
                exps[k] += e
            elif t.kind == "IDENT" and t.text in DIRS and self.vector:
                k = DIRS.index(t.text)
                if k >= self.arity:
                    self.fail(f"a direction among {DIRS[: self.arity]}")
                if direction is not None:
                    self.fail("at most one of dx, dy, dz per term")
                direction = k
                self.advance()
            else:
                self.fail("a number, variable, direction or '('" if self.vector else "a number, variable or '('")
            if self.tok.kind != "*":
                break
            self.advance()
        if self.tok.kind not in ("+", "-", "END"):
            self.fail("'*', '+', '-' or end of input")
        if self.vector and direction is None and not (zero_literal and not any(exps)):
            self.fail("'*' followed by dx, dy or dz")
        return (direction, tuple(exps)), coeff

    def number(self):
        n = int(self.advance().text)
        if self.tok.kind == "/":
            self.advance()
            t = self.tok
            den = int(self.expect("NUM", "a denominator").text)
            if den == 0:
                raise ParseError(t.pos, "a nonzero denominator", t.text)
            return qdiv(n, den)
        return n

    # -- parenthesized scalars (cyclotomic coefficients) --------------------

    def scalar(self):
        total = self.field(0)
        first = True
        while True:
            sign = 1
            if self.tok.kind in ("+", "-"):
                sign = -1 if self.advance().kind == "-" else 1
            elif not first:
                break
            total = total + self.sprod() * sign
            first = False
            if self.tok.kind not in ("+", "-"):
                break
        return total

    def sprod(self):
        val = self.field(1)
        while True:
            t = self.tok
            if t.kind == "NUM":
                val = val * self.number()
            elif t.kind == "IDENT" and t.text == "z" and isinstance(self.field, CyclotomicField):
                self.advance()
                e = 1
                if self.tok.kind == "^":
                    self.advance()
                    e = int(self.expect("NUM", "an integer exponent").text)
                val = val * self.field.zeta_power(e)
            else:
                self.fail("a number or z" if isinstance(self.field, CyclotomicField) else "a number")
            if self.tok.kind != "*":
                return val
            self.advance()


def parse_poly(text: str, arity: int, field=QQ) -> Poly:
    terms = _Parser(text, arity, field, vector=False).parse()
    return Poly({e: c for (_, e), c in terms.items()}, arity, field)


def parse_vecfield(text: str, arity: int, field=QQ):
    from .vecfield import VecField

    terms = _Parser(text, arity, field, vector=True).parse()
    return VecField.from_terms({k: c for k, c in terms.items() if k[0] is not None}, arity, field)


def parse_word(source):
    """A bracket word from JSON text or from an already decoded JSON object."""
    from .generate import WordError, word_from_json

    if isinstance(source, (str, bytes)):
        text = source.decode("utf-8") if isinstance(source, bytes) else source
        try:
            source = json.loads(text)
        except json.JSONDecodeError as exc:
            found = text[exc.pos : exc.pos + 1] or "end of input"
            raise ParseError(_offset(text, exc.pos), "valid JSON", found) from None
    try:
        return word_from_json(source)
    except WordError as exc:
        raise ParseError(0, "a bracket word", str(exc)) from None


# ---------------------------------------------------------------------------
# printing


def format_cyclotomic(c: Cyclotomic) -> str:
    """Rational values print plainly, others as a parenthesized polynomial in z."""
    if c.is_rational():
        return format_rational(c.coeffs[0] if c.coeffs else 0)
    parts = []
    for k, q in enumerate(c.coeffs):
        if not q:
            continue
        mono = "" if k == 0 else "z" if k == 1 else f"z^{k}"
        parts.append((q, mono))
    return "(" + _join(parts) + ")"


def format_scalar(c) -> str:
    if isinstance(c, Cyclotomic):
        return format_cyclotomic(c)
    return format_rational(c)


def _join(parts) -> str:
    """Join (coefficient, monomial-text) pairs with the sign folded into the operator."""
    out = []
    for idx, (c, mono) in enumerate(parts):
        if isinstance(c, Cyclotomic) and not c.is_rational():
            body = format_cyclotomic(c) + (f"*{mono}" if mono else "")
            out.append(body if idx == 0 else f" + {body}")
            continue
        if isinstance(c, Cyclotomic):
            c = c.coeffs[0]
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def format_monomial(exps) -> str:
    if len(exps) > len(VARS):
        raise ValueError(f"printing supports at most {len(VARS)} variables")
    return "*".join(VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(exps) if e)


def format_poly(p: Poly) -> str:
    return _join([(c, format_monomial(e)) for e, c in p.sorted_terms()])


def format_vecfield(v) -> str:
    parts = []
    for i, p in enumerate(v.coeffs):
        for e, c in p.sorted_terms():
            m = format_monomial(e)
            parts.append((c, f"{m}*{DIRS[i]}" if m else DIRS[i]))
    return _join(parts)


def format_word(w) -> str:
    from .generate import word_to_json

    return json.dumps(word_to_json(w), separators=(",", ":"))


__all__ = [
    "ParseError",
    "format_cyclotomic",
    "format_poly",
    "format_scalar",
    "format_vecfield",
    "format_word",
    "parse_poly",
    "parse_vecfield",
    "parse_word",
    "tokenize",
]
