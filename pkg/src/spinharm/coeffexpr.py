"""Recursive-descent parser for model-file coefficient expressions.

Grammar (standard precedence, ^ binds tightest, then unary minus, then * /,
then + -):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] INTEGER]
    atom   := INTEGER | 't' | 'u' | '(' expr ')'

Expressions may mention both t and u; t is rewritten through the model's
substitution before any arithmetic, so model files can quote coefficients
like (1-t)/(2*u) verbatim.  Folding happens in exact Scalar arithmetic;
division by a subexpression that folds to zero is rejected with a position.
"""

from __future__ import annotations

from .scalars import Scalar, Substitution


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at column {position}")
        self.position = position


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i + 1))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i + 1))
            i = j
            continue
        if ch in ("t", "u"):
            tokens.append(("sym", ch, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i + 1)
    # EOF reports at the last column so truncated input points at the culprit
    tokens.append(("end", None, max(len(text), 1)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.advance()
            rhs = self.term()
            node = (op, node, rhs, pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs = self.unary()
            node = (op, node, rhs, pos)
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "-":
            _, _, pos = self.advance()
            return ("neg", self.unary(), pos)
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.advance()
            sign = 1
            if self.peek()[0] == "-":
                self.advance()
                sign = -1
            tok = self.expect("int")
            node = ("pow", node, sign * tok[1], pos)
        return node

    def atom(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            return ("int", value, pos)
        if kind == "sym":
            return ("sym", value, pos)
        if kind == "(":
            node = self.expr()
            closing = self.advance()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[2])
            return node
        raise ParseError("expected a number, symbol, or '('", pos)


def parse_coeff(text):
    """Parse a coefficient expression into an AST."""
    return _Parser(text).parse()


def fold(node, sub: Substitution) -> Scalar:
    """Evaluate an AST to a Scalar, binding t through the substitution."""
    kind = node[0]
    if kind == "int":
        return Scalar.rational(node[1])
    if kind == "sym":
        return Scalar.u() if node[1] == "u" else sub.t_as_scalar()
    if kind == "neg":
        return -fold(node[1], sub)
    if kind == "pow":
        base = fold(node[1], sub)
        exp = node[2]
        if exp < 0 and base.is_zero:
            raise ParseError("division by zero", node[3])
        return base ** exp
    op, lhs, rhs, pos = node
    a = fold(lhs, sub)
    b = fold(rhs, sub)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b.is_zero:
            raise ParseError("division by zero", pos)
        return a / b
    raise ParseError(f"unknown operator {op!r}", pos)


def parse_scalar(text, sub: Substitution) -> Scalar:
    """Parse and fold a coefficient string in one step."""
    return fold(parse_coeff(text), sub)
