"""Recursive-descent parser for coefficient expressions and matrix text.

Grammar (ASCII, whitespace insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*'? factor)*
    factor  := atom ('^' ['+'|'-'] int)?
    atom    := primary ('/' primary)*
    primary := int | 't' | '(' expr ')'

Division binds tighter than exponentiation, so ``2/t^2`` is ``(2/t)^2``;
``render_coeff`` parenthesizes accordingly.  A leading sign on an expression
is accepted as a convenience.
"""

from .coeff import RationalFn, check_prime, render_coeff
from .errors import ParseError

__all__ = ["parse_coeff", "parse_matrix", "render_coeff", "render_matrix"]

_SINGLE = set("+-*/^()t")


def _tokenize(text, offset):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], offset + i))
            i = j
        elif c in _SINGLE:
            tokens.append((c, c, offset + i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", text, offset + i)
    tokens.append(("end", "", offset + n))
    return tokens


class _Parser:
    def __init__(self, text, p, offset=0):
        self.text = text
        self.p = p
        self.tokens = _tokenize(text, offset)
        self.i = 0
        self.one = RationalFn.from_int(1, p)
        self.t = RationalFn.gen(p)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self):
        return self.peek()[0] in ("int", "t", "(")

    def term(self):
        value = self.factor()
        while True:
            if self.peek()[0] == "*":
                self.take()
                value = value * self.factor()
            elif self._starts_factor():
                value = value * self.factor()
            else:
                return value

    def factor(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        neg = False
        if self.peek()[0] in "+-":
            neg = self.take()[0] == "-"
        tok = self.peek()
        if tok[0] != "int":
            self.error("exponent must be an integer")
        self.take()
        k = int(tok[1])
        if neg:
            if base.is_zero():
                raise ZeroDivisionError(f"negative power of zero (at position {tok[2]})")
            return base.inverse() ** k
        return base ** k

    def atom(self):
        value = self.primary()
        while self.peek()[0] == "/":
            tok = self.take()
            rhs = self.primary()
            if rhs.is_zero():
                raise ZeroDivisionError(f"division by the zero polynomial (at position {tok[2]})")
            value = value / rhs
        return value

    def primary(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return RationalFn.from_int(int(tok[1]), self.p)
        if tok[0] == "t":
            self.take()
            return self.t
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        self.error(f"expected a number, 't' or '(', found {what}")


def parse_coeff(text, p, _offset=0):
    """Parse a coefficient expression into a reduced element of F_p(t)."""
    check_prime(p)
    return _Parser(text, p, _offset).parse()


def parse_matrix(text, p):
    """Parse ``'a,b;c,d'`` into a square ``MatK``."""
    from .matrices import MatK

    check_prime(p)
    rows = []
    pos = 0
    for row_text in text.split(";"):
        row = []
        for entry in row_text.split(","):
            if not entry.strip():
                raise ParseError("empty matrix entry", text, pos)
            row.append(parse_coeff(entry, p, _offset=pos))
            pos += len(entry) + 1
        rows.append(row)
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"row {i} has {len(row)} entries, expected {n}", text, 0)
    return MatK(rows)


def render_matrix(m):
    return ";".join(",".join(render_coeff(x) for x in row) for row in m.rows)
